#pragma once

// Integer arithmetic of positive definite binary quadratic forms:
// Gauss reduction and composition, class group enumeration, ideal class
// characters (stored as exact rational angles), prime splitting in the
// associated imaginary quadratic order, and the prime-power coefficient
// tables of the attached Hecke L-functions.

#include <complex>
#include <cstdint>
#include <vector>

#include "epzeros/errors.hpp"

namespace epz {

struct BinaryQuadraticForm {
    long long a = 1, b = 0, c = 1; // Q(m,n) = a m^2 + b m n + c n^2

    long long discriminant() const { return b * b - 4 * a * c; }
    bool positive_definite() const { return a > 0 && discriminant() < 0; }
    bool reduced() const {
        if (!positive_definite()) return false;
        if (!(std::llabs(b) <= a && a <= c)) return false;
        if ((std::llabs(b) == a || a == c) && b < 0) return false;
        return true;
    }
    long long content() const;
    long long eval(long long m, long long n) const { return a * m * m + b * m * n + c * n * n; }

    friend bool operator==(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;
    friend auto operator<=>(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;
};

// throws InvalidDiscriminant unless D < 0 and D = 0,1 (mod 4)
void validate_discriminant(long long D);

// unique reduced representative of the class of f; throws NonPositiveDefinite
BinaryQuadraticForm reduce_form(BinaryQuadraticForm f);

// Gauss composition of two primitive forms of equal discriminant (reduced output)
BinaryQuadraticForm compose_forms(const BinaryQuadraticForm& f1, const BinaryQuadraticForm& f2);

struct ClassGroup {
    long long D = -4;
    std::vector<BinaryQuadraticForm> classes;        // index 0 = principal
    std::vector<std::vector<int>> composition_table; // h x h
    std::vector<int> generator_indices;              // polycyclic generating chain
    std::vector<int> cyclic_orders;                  // relative orders; product = h

    int h() const { return static_cast<int>(classes.size()); }
    int compose(int i, int k) const { return composition_table[i][k]; }
    int inverse(int i) const;
    int order(int i) const;
    // index of the class of an arbitrary (primitive, positive definite) form
    int class_index(const BinaryQuadraticForm& f) const;
};

ClassGroup enumerate_classes(long long D);

// exact character value exp(2 pi i num/den), 0 <= num < den, gcd(num,den)=1
struct RationalAngle {
    long long num = 0, den = 1;
    std::complex<double> value() const;
    bool is_real() const { return den == 1 || den == 2; } // value is +-1
    friend bool operator==(const RationalAngle&, const RationalAngle&) = default;
    friend auto operator<=>(const RationalAngle&, const RationalAngle&) = default;
};

RationalAngle angle_add(RationalAngle x, RationalAngle y);
RationalAngle angle_times(RationalAngle x, long long k);
RationalAngle angle_conj(RationalAngle x);

struct CharacterSystem {
    ClassGroup group;
    int anchor_class = 0; // class of the input form Q
    int w_D = 2;          // roots of unity: 6 (D=-3), 4 (D=-4), else 2
    int J = 1;            // #real + (1/2)#complex characters
    // retained characters, one per conjugate pair, real ones first;
    // chars[j][A] is the exact angle of chi_j on class A
    std::vector<std::vector<RationalAngle>> chars;
    std::vector<bool> is_real;
    std::vector<double> coeffs; // c_j, all real

    std::complex<double> chi(int j, int cls) const { return chars[j][cls].value(); }
};

CharacterSystem character_system(const ClassGroup& g, int anchor);

struct SplittingType {
    enum Kind { Split, Inert, Ramified } kind = Inert;
    int prime_class = -1; // class of a prime ideal above p (split/ramified)
    BinaryQuadraticForm prime_form; // its reduced form
};

SplittingType splitting_type(const ClassGroup& g, long long p);

// Coefficients a_j(p^n) of log L_j(s) = sum_{p,n} a_j(p^n) p^{-ns}.
struct EulerTable {
    CharacterSystem system;
    long long P_max = 2;
    double Y_max = 2;

    struct PrimeData {
        long long p;
        SplittingType::Kind kind;
        int prime_class;                  // -1 for inert
        std::vector<RationalAngle> chi;   // chi_j(p-ideal) for split/ramified
        int n_max;                        // largest n with p^n <= Y_max
    };
    std::vector<PrimeData> primes;

    // a_j(p^n); pd must come from this table
    double coeff(const PrimeData& pd, int j, int n) const;
    int J() const { return system.J; }
};

EulerTable build_euler_table(const CharacterSystem& sys, long long P_max, double Y_max);

std::vector<long long> sieve_primes(long long n);

// deterministic principal form of discriminant D
BinaryQuadraticForm principal_form(long long D);

} // namespace epz
