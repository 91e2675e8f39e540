#include "epzeros/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace epz {

namespace {

using i128 = __int128_t;

long long gcd3(long long a, long long b, long long c) {
    return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c));
}

// g = gcd(a,b) = x a + y b
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return std::llabs(a);
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

long long mulmod(long long a, long long b, long long m) {
    return static_cast<long long>(static_cast<i128>(a) * b % m);
}

long long powmod(long long a, long long e, long long m) {
    long long r = 1 % m;
    a %= m;
    if (a < 0) a += m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// square root of a mod odd prime p (a must be a QR); Tonelli-Shanks
long long sqrt_mod(long long a, long long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    long long q = p - 1, s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    long long z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    long long m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        long long i = 0, tt = t;
        while (tt != 1) { tt = mulmod(tt, tt, p); ++i; }
        long long b = powmod(c, 1LL << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int res = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) res = -res;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        long long am = ((a % 8) + 8) % 8;
        if (am == 3 || am == 5) res = -res;
    }
    a %= n;
    if (a < 0) a += n;
    while (a) {
        while (a % 2 == 0) {
            a /= 2;
            if (n % 8 == 3 || n % 8 == 5) res = -res;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) res = -res;
        a %= n;
    }
    return n == 1 ? res : 0;
}

} // namespace

long long BinaryQuadraticForm::content() const { return gcd3(a, b, c); }

void validate_discriminant(long long D) {
    if (D >= 0) throw InvalidDiscriminant("discriminant must be negative");
    long long r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) throw InvalidDiscriminant("discriminant must be 0 or 1 mod 4");
}

BinaryQuadraticForm reduce_form(BinaryQuadraticForm f) {
    if (!f.positive_definite())
        throw NonPositiveDefinite("form is not positive definite");
    while (true) {
        // normalize to -a < b <= a
        if (f.b > f.a || f.b <= -f.a) {
            long long r = ((f.b % (2 * f.a)) + 2 * f.a) % (2 * f.a);
            if (r > f.a) r -= 2 * f.a;
            long long q = (f.b - r) / (2 * f.a);
            f.c -= q * (f.b + r) / 2;
            f.b = r;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        if ((f.a == f.c || f.a == std::llabs(f.b)) && f.b < 0) f.b = -f.b;
        return f;
    }
}

BinaryQuadraticForm compose_forms(const BinaryQuadraticForm& f1, const BinaryQuadraticForm& f2) {
    long long D = f1.discriminant();
    if (D != f2.discriminant()) throw DomainError("compose: discriminants differ");
    long long s = (f1.b + f2.b) / 2;
    long long u0, v0, v1, w;
    long long g = ext_gcd(f1.a, f2.a, u0, v0);
    long long d = ext_gcd(g, s, v1, w);
    i128 v = static_cast<i128>(v0) * v1;
    long long a2d = f2.a / d;
    long long A = (f1.a / d) * a2d;
    i128 t = (static_cast<i128>(s - f2.b) * v - static_cast<i128>(w) * f2.c) * a2d * 2;
    i128 B = f2.b + t;
    i128 twoA = 2 * static_cast<i128>(A);
    B %= twoA;
    if (B < 0) B += twoA;
    long long Bl = static_cast<long long>(B);
    long long C = static_cast<long long>((static_cast<i128>(Bl) * Bl - D) / (4 * static_cast<i128>(A)));
    return reduce_form({A, Bl, C});
}

BinaryQuadraticForm principal_form(long long D) {
    long long b = ((D % 2) + 2) % 2;
    return {1, b, (b * b - D) / 4};
}

int ClassGroup::inverse(int i) const {
    const auto& f = classes[i];
    return class_index(reduce_form({f.a, -f.b, f.c}));
}

int ClassGroup::order(int i) const {
    int o = 1, x = i;
    while (x != 0) {
        x = composition_table[x][i];
        ++o;
    }
    return o;
}

int ClassGroup::class_index(const BinaryQuadraticForm& f) const {
    BinaryQuadraticForm r = reduce_form(f);
    if (r.discriminant() != D) throw DomainError("form has wrong discriminant");
    if (r.content() != 1) throw DomainError("form is imprimitive; no ideal class attached");
    auto it = std::lower_bound(classes.begin() + 1, classes.end(), r);
    if (it != classes.end() && *it == r) return static_cast<int>(it - classes.begin());
    if (classes[0] == r) return 0;
    throw DomainError("reduced form not found in class list");
}

ClassGroup enumerate_classes(long long D) {
    validate_discriminant(D);
    ClassGroup g;
    g.D = D;
    long long bmax = static_cast<long long>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
    std::vector<BinaryQuadraticForm> forms;
    for (long long a = 1; a <= bmax + 1; ++a) {
        for (long long b = -a; b <= a; ++b) {
            long long num = b * b - D;
            if (num % (4 * a)) continue;
            long long c = num / (4 * a);
            if (c < a) continue;
            BinaryQuadraticForm f{a, b, c};
            if (!f.reduced()) continue;
            if (f.content() != 1) continue; // primitive classes only
            forms.push_back(f);
        }
    }
    std::sort(forms.begin(), forms.end());
    BinaryQuadraticForm e = principal_form(D);
    // principal first, remainder in lexicographic order
    forms.erase(std::remove(forms.begin(), forms.end(), e), forms.end());
    g.classes.push_back(e);
    g.classes.insert(g.classes.end(), forms.begin(), forms.end());

    int h = g.h();
    g.composition_table.assign(h, std::vector<int>(h, 0));
    for (int i = 0; i < h; ++i)
        for (int k = i; k < h; ++k) {
            BinaryQuadraticForm r = compose_forms(g.classes[i], g.classes[k]);
            int idx = 0;
            if (r == e) idx = 0;
            else {
                auto it = std::lower_bound(g.classes.begin() + 1, g.classes.end(), r);
                idx = static_cast<int>(it - g.classes.begin());
            }
            g.composition_table[i][k] = g.composition_table[k][i] = idx;
        }

    // polycyclic generating chain: repeatedly adjoin the element of largest
    // order relative to the subgroup generated so far
    std::set<int> sub{0};
    while (static_cast<int>(sub.size()) < h) {
        int best = -1, bestord = 0;
        for (int x = 1; x < h; ++x) {
            if (sub.count(x)) continue;
            int m = 1, y = x;
            while (!sub.count(y)) {
                y = g.composition_table[y][x];
                ++m;
            }
            if (m > bestord) { bestord = m; best = x; }
        }
        g.generator_indices.push_back(best);
        g.cyclic_orders.push_back(bestord);
        std::set<int> bigger;
        for (int s0 : sub) {
            int y = s0;
            for (int k = 0; k < bestord; ++k) {
                bigger.insert(y);
                y = g.composition_table[y][best];
            }
        }
        sub = std::move(bigger);
    }
    return g;
}

std::complex<double> RationalAngle::value() const {
    // exact at the quarter points, else cospi/sinpi style evaluation
    long long n4 = 4 * num;
    if (n4 % den == 0) {
        switch ((n4 / den) % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    double theta = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(theta), std::sin(theta)};
}

RationalAngle angle_add(RationalAngle x, RationalAngle y) {
    long long den = std::lcm(x.den, y.den);
    long long num = x.num * (den / x.den) + y.num * (den / y.den);
    num %= den;
    if (num < 0) num += den;
    long long g = std::gcd(num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
}

RationalAngle angle_times(RationalAngle x, long long k) {
    i128 num = static_cast<i128>(x.num) * k % x.den;
    if (num < 0) num += x.den;
    long long n = static_cast<long long>(num);
    long long g = std::gcd(n, x.den);
    if (n == 0) return {0, 1};
    return {n / g, x.den / g};
}

RationalAngle angle_conj(RationalAngle x) {
    if (x.num == 0) return x;
    long long n = x.den - x.num;
    long long g = std::gcd(n, x.den);
    return {n / g, x.den / g};
}

CharacterSystem character_system(const ClassGroup& g, int anchor) {
    if (anchor < 0 || anchor >= g.h()) throw DomainError("anchor class index out of range");
    CharacterSystem sys;
    sys.group = g;
    sys.anchor_class = anchor;
    sys.w_D = (g.D == -3) ? 6 : (g.D == -4) ? 4 : 2;

    int h = g.h();
    // Build all h characters by extension along the polycyclic chain.
    // Elements of the current subgroup are kept with their angle per character.
    std::vector<std::vector<RationalAngle>> chars(1, std::vector<RationalAngle>(h));
    std::vector<int> members{0};
    std::vector<char> in_sub(h, 0);
    in_sub[0] = 1;
    for (size_t gi = 0; gi < g.generator_indices.size(); ++gi) {
        int x = g.generator_indices[gi];
        int m = g.cyclic_orders[gi];
        // x^m lands in the previous subgroup
        int xm = 0;
        for (int k = 0; k < m; ++k) xm = g.composition_table[xm][x];
        std::vector<std::vector<RationalAngle>> next;
        std::vector<int> new_members;
        std::vector<int> powers(m);
        int y = 0;
        for (int k = 0; k < m; ++k) { powers[k] = y; y = g.composition_table[y][x]; }
        for (int s0 : members)
            for (int k = 0; k < m; ++k)
                if (int el = g.composition_table[s0][powers[k]]; !in_sub[el])
                    new_members.push_back(el);
        for (const auto& chi : chars) {
            RationalAngle base = chi[xm]; // chi(x)^m must equal this
            for (long long ell = 0; ell < m; ++ell) {
                RationalAngle vx{base.num + ell * base.den, base.den * m};
                long long gg = std::gcd(vx.num, vx.den);
                if (vx.num == 0) vx = {0, 1};
                else vx = {vx.num / gg, vx.den / gg};
                auto ext = chi;
                for (int s0 : members)
                    for (int k = 0; k < m; ++k)
                        ext[g.composition_table[s0][powers[k]]] =
                            angle_add(chi[s0], angle_times(vx, k));
                next.push_back(std::move(ext));
            }
        }
        chars = std::move(next);
        for (int el : new_members) in_sub[el] = 1;
        members.insert(members.end(), new_members.begin(), new_members.end());
    }

    // retain real characters first, then one representative per conjugate pair,
    // each group in lexicographic value-table order
    auto table_real = [&](const std::vector<RationalAngle>& chi) {
        for (const auto& v : chi)
            if (!v.is_real()) return false;
        return true;
    };
    std::sort(chars.begin(), chars.end());
    std::vector<std::vector<RationalAngle>> retained;
    std::vector<bool> isreal;
    for (const auto& chi : chars)
        if (table_real(chi)) {
            retained.push_back(chi);
            isreal.push_back(true);
        }
    std::set<std::vector<RationalAngle>> seen;
    for (const auto& chi : chars) {
        if (table_real(chi)) continue;
        if (seen.count(chi)) continue;
        std::vector<RationalAngle> conj(chi.size());
        for (size_t i = 0; i < chi.size(); ++i) conj[i] = angle_conj(chi[i]);
        seen.insert(chi);
        seen.insert(conj);
        retained.push_back(chi);
        isreal.push_back(false);
    }
    sys.chars = std::move(retained);
    sys.is_real = std::move(isreal);
    sys.J = static_cast<int>(sys.chars.size());
    sys.coeffs.resize(sys.J);
    for (int j = 0; j < sys.J; ++j) {
        double re = sys.chars[j][anchor].value().real();
        double base = static_cast<double>(sys.w_D) / h;
        sys.coeffs[j] = sys.is_real[j] ? base * re : base * 2.0 * re;
    }
    return sys;
}

SplittingType splitting_type(const ClassGroup& g, long long p) {
    long long D = g.D;
    int kr = kronecker(D, p);
    SplittingType st;
    if (kr == -1) {
        st.kind = SplittingType::Inert;
        return st;
    }
    st.kind = (kr == 1) ? SplittingType::Split : SplittingType::Ramified;
    // smallest b with b^2 = D (mod 4p), 0 <= b < 2p, b = D (mod 2)
    long long b = -1;
    if (p == 2) {
        for (long long cand = 0; cand < 4 && b < 0; ++cand)
            if ((cand - D) % 2 == 0 && ((cand * cand - D) % 8 + 8) % 8 == 0) b = cand;
    } else {
        long long r = sqrt_mod(D, p);
        for (long long cand : {r, p - r, r + p, 2 * p - r}) {
            cand %= 2 * p;
            if (cand < 0) cand += 2 * p;
            if ((cand - D) % 2 != 0) continue;
            if (((static_cast<i128>(cand) * cand - D) % (4 * p)) != 0) continue;
            if (b < 0 || cand < b) b = cand;
        }
    }
    if (b < 0) throw DomainError("no square root of D mod 4p");
    long long c = static_cast<long long>((static_cast<i128>(b) * b - D) / (4 * p));
    BinaryQuadraticForm f{p, b, c};
    if (f.content() != 1)
        throw DomainError("prime divides the conductor; splitting data undefined");
    st.prime_form = reduce_form(f);
    st.prime_class = g.class_index(st.prime_form);
    return st;
}

std::vector<long long> sieve_primes(long long n) {
    std::vector<char> is(n + 1, 1);
    std::vector<long long> out;
    if (n >= 0) is[0] = 0;
    if (n >= 1) is[1] = 0;
    for (long long i = 2; i * i <= n; ++i)
        if (is[i])
            for (long long j = i * i; j <= n; j += i) is[j] = 0;
    for (long long i = 2; i <= n; ++i)
        if (is[i]) out.push_back(i);
    return out;
}

double EulerTable::coeff(const PrimeData& pd, int j, int n) const {
    switch (pd.kind) {
        case SplittingType::Inert:
            return (n % 2) ? 0.0 : 1.0 / (n / 2);
        case SplittingType::Ramified: {
            // chi(p-ideal) = +-1
            double v = pd.chi[j].value().real();
            return ((n % 2) ? v : 1.0) / n;
        }
        case SplittingType::Split: {
            // (chi(p1)^n + chi(p2)^n)/n = 2 cos(2 pi n theta_j)/n
            RationalAngle an = angle_times(pd.chi[j], n);
            return 2.0 * an.value().real() / n;
        }
    }
    return 0.0;
}

EulerTable build_euler_table(const CharacterSystem& sys, long long P_max, double Y_max) {
    if (P_max < 2) throw DomainError("P_max must be >= 2");
    EulerTable t;
    t.system = sys;
    t.P_max = P_max;
    t.Y_max = Y_max;
    auto ps = sieve_primes(P_max);
    t.primes.reserve(ps.size());
    for (long long p : ps) {
        SplittingType st = splitting_type(sys.group, p);
        EulerTable::PrimeData pd;
        pd.p = p;
        pd.kind = st.kind;
        pd.prime_class = st.prime_class;
        if (st.kind != SplittingType::Inert)
            for (int j = 0; j < sys.J; ++j) pd.chi.push_back(sys.chars[j][st.prime_class]);
        int n = 0;
        double pw = 1;
        while (pw * p <= Y_max) { pw *= p; ++n; }
        pd.n_max = n;
        if (n > 0) t.primes.push_back(pd);
    }
    return t;
}

} // namespace epz
