// High-precision reference values (50-digit arithmetic).
// ktilde(mu, t, y) = e^{pi t/2} K_{mu+it}(y); entries: mu, t, y, re, im
inline constexpr double kKtildeRef[][5] = {
    {0.05, 0.5, 0.7, 1.28481840962436471, 0.031389820952761873},
    {0.05, 0.5, 8.0, 0.000316588876840998518, 9.34994456193801216e-7},
    {2.5, 0.5, 17.0, 3.24443677746235768e-8, 2.31651089298239152e-9},
    {1.0, 2.0, 5.0, 0.0605470401210274038, 0.023598556950071726},
    {0.25, 5.0, 3.0, 0.838603594663263408, 0.61957357301603014},
    {0.25, 12.0, 11.0, 0.815044535893024362, 0.289505444104765008},
    {0.1, 20.0, 4.0, 0.536151124963402409, 0.1292865311872589},
    {0.3, 35.0, 33.0, 0.579372987561984355, 0.277689362914700246},
    {1.5, 49.0, 60.0, 0.000404173481959104569, 0.00241377714868796529},
    {0.05, 60.0, 14.0, 0.324533355400775042, 0.019601593005450423},
    {0.4, 80.0, 79.0, 0.335774855616665906, 0.211885282511531151},
    {2.5, 100.0, 101.0, -0.266249818757902953, -0.0524687194835253882},
    {0.05, 150.0, 30.0, 0.0475463711340040998, 0.0268916677357593777},
    {0.25, 300.0, 260.0, 0.0361097459497277461, 0.0445999554352546918},
    {0.25, 300.0, 299.0, 0.223214533182434976, 0.0848836766464471888},
    {1.0, 300.0, 330.0, 8.57432154027114146e-6, 0.0000183419441870758839},
    {0.05, 1000.0, 65.0, 0.00645185944818465276, 0.0141470863678131747},
    {0.3, 1000.0, 920.0, -0.0958137602392183555, -0.0384529284401020979},
    {0.3, 1000.0, 1001.0, 0.115456486080878163, 0.0545331501196764499},
    {2.5, 1000.0, 1090.0, -1.3641548759168948e-12, 3.39932503044439128e-13},
    {0.25, 2000.0, 1500.0, -0.0647120382589164254, -0.0273260569223096908},
    {0.1, 2000.0, 1999.0, 0.118313830929471915, 0.0179223468989108229},
};

// upper incomplete gamma: s_re, s_im, x, re, im
inline constexpr double kUpperGammaRef[][5] = {
    {1.0, 0.0, 2.5, 0.0820849986238987952, 0.0},
    {0.5, 0.0, 1.0, 0.278805585280661976, 0.0},
    {0.75, 10.0, 2.0, -0.0114732435837321731, 0.0200003330109533726},
    {0.3, 0.0, 0.2, 1.02459226216623543, 0.0},
    {2.0, 35.0, 7.0, 0.00116072598485874718, 0.000517315149673199436},
    {1.2, 120.0, 40.0, -1.62505592353932038e-18, -2.30918383710122294e-18},
    {0.25, -6.0, 3.0, 0.00198546484078700629, -0.0102753513187663574},
    {2.5, 0.0, 30.0, 1.6157560505750908e-11, 0.0},
};

// riemann zeta: z_re, z_im, re, im
inline constexpr double kZetaRef[][4] = {
    {2.0, 0.0, 1.64493406684822644, 0.0},
    {1.5, 3.0, 0.719834124834530846, -0.118449083188759696},
    {1.2, 77.0, 0.510178601632375186, 0.0306394944703337993},
    {0.3, 4000.0, -0.887920827479956128, -0.816712064906697389},
    {1.02, 40000.0, 1.58044528848789416, 0.922054079975575707},
    {3.0, -12.5, 0.92501587735850174, 0.109864068153256934},
    {0.02, 9.0, 1.57623884528386616, 0.292846276098316467},
    {1.1, 400000.0, 1.70611937472953759, 0.0162790733117751979},
};

// bessel J0: x, J0(x)
inline constexpr double kJ0Ref[][2] = {
    {0.0, 1.0},
    {0.5, 0.938469807240812904},
    {2.0, 0.223890779141235668},
    {5.2, -0.110290439790986479},
    {7.9, 0.19436184484127824},
    {8.1, 0.14751745404437767},
    {11.0, -0.171190300407196088},
    {14.5, 0.0875448680103762229},
    {16.0, -0.174899073983629185},
    {33.7, 0.0104116029456948511},
    {100.0, 0.0199858503042231224},
    {2047.3, -0.00407288513846851232},
};

// E(s,Q) references via 50-digit Selberg-Chowla: a,b,c,s_re,s_im,E_re,E_im
inline constexpr double kEpsteinRef[][7] = {
    {1, 0, 1, 2.0, 0.0, 6.02681203969194012, 0.0},
    {1, 1, 6, 0.75, 50.0, 2.68645079319440242, -0.562071167082422688},
    {2, 1, 5, 0.55, 300.0, 0.302650748984253946, 0.296705432548007945},
    {1, 1, 10, 0.8, 1000.0, 1.06642438287673075, 0.133530621400962072},
    {3, 3, 4, 1.05, 777.0, -0.209213462750214292, 0.128659244578832419},
    {2, 1, 3, 0.51, 60.0, -4.31484117766016955, -0.797837396430213684},
    {1, 1, 10, 3.0, 950.0, 1.97777505117444652, 0.0138491256870375633},
    {1, 0, 1, 0.9, 950.0, 2.75675820425067916, 0.330007007195832548},
    {1, 1, 6, 0.6, 14.0, 4.71187851927733063, -1.22050136027342984},
};