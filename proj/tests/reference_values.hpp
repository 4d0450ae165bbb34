#pragma once

// Frozen reference values for the test suite.  Everything here was computed
// with an independent arbitrary-precision tool (mpmath at 50 digits) and
// rounded to 17 significant digits; tests compare library output against
// these constants rather than against the library's own formulas.

#include <complex>

namespace refvals {

using Complex = std::complex<double>;

// ---- complex gamma -------------------------------------------------------

struct GammaCase {
  Complex z;
  Complex value;
};

inline const GammaCase kGamma[] = {
    {{0.5, 0.0}, {1.7724538509055160, 0.0}},
    {{1.0, 0.0}, {1.0, 0.0}},
    {{1.5, 0.0}, {0.88622692545275801, 0.0}},
    {{2.0, 0.0}, {1.0, 0.0}},
    {{3.7, 0.0}, {4.1706517837966040, 0.0}},
    {{8.0, 0.0}, {5040.0, 0.0}},
    {{0.5, 0.5}, {0.81816399954174739, -0.76331382871398262}},
    {{1.0, 3.1415926535897931},
     {0.011176348086502161, 0.029934328430278205}},
    {{2.0, -1.0}, {0.65296549642016673, -0.34306583981654536}},
    {{0.25, 2.5}, {0.032506956263841573, -0.022134168909376933}},
    {{5.0, 4.0}, {4.8104160663549284, 0.83650339437553875}},
    {{0.1, -0.2}, {1.5391003433867947, 3.8384919018379110}},
};

// ---- transform spot values ----------------------------------------------
// value = omega_{n-1} \int_0^inf profile(r) r^{n-1+iy} dr

// heat kernel at time 1, n = 2, y = 1.7
inline const Complex kGaussianN2Y17{0.39226260443482877, 0.46651425038258536};
// Poisson kernel, n = 1, y = 2 (real: the profile is even in y)
inline const Complex kPoissonN1Y2{0.086266738334054415, 0.0};
// counterexample kernel, n = 1, y = 1
inline const Complex kCounterexampleN1Y1{0.22890455679217702, 0.0};
// stretched exponential e^{-0.5 r}, n = 1, y = 0.7
inline const Complex kStretchedN1Y07{2.7591040319754158, 0.53743359728886383};
// log-damped power K(alpha=0.8, beta=0), n = 1, y = 1.1
inline const Complex kLogDampedN1Y11{0.93205698492297706, 0.33242951955677240};
// power kernel (1+r^2)^{-2}, n = 3, y = -3
inline const Complex kPowerN3Ym3{0.17730874846634881, -0.53192624539904643};

// ---- counterexample kernel psi ------------------------------------------
// psi(s) = \int_{1/e}^{e} s^n r^{n-1} (r+s)^{-2n} dr

inline const double kPsiArg[7] = {1e-3, 0.1, 0.7, 1.0, 2.5, 37.0, 1e4};
inline const double kPsiN1[7] = {
    2.3431686477899333e-3, 1.7824765974164880e-1, 4.5072346432982874e-1,
    4.6211715726000974e-1, 3.9263933619895408e-1, 5.8594255084018172e-2,
    2.3496772155089671e-4};
inline const double kPsiN2[7] = {
    3.6002819330121385e-6, 1.8971253257640895e-2, 1.0285089948205145e-1,
    1.0730544210098443e-1, 8.1035302093325018e-2, 2.1869563506533392e-3,
    3.6241903384355123e-8};

// c_psi = 2 B(n, n) for n = 1, 2, 3
inline const double kCpsi[3] = {2.0, 1.0 / 3.0, 1.0 / 15.0};

// phi(0) = psi-profile value at the origin, n = 1 and n = 2
inline const double kPhi0N1 = 0.58760059682190073;
inline const double kPhi0N2 = 1.7316982854394217;

// mean-ratio oscillation amplitude n / sqrt(n^2 + pi^2)
inline const double kAmplitudeN1 = 0.30331447105335286;
inline const double kAmplitudeN2 = 0.53702927214631508;

// ---- hyperbolic constants ------------------------------------------------

// d_lambda for hyperbolic dimension 2, lambda = 0.5 + i
inline const Complex kDlambdaH2L051{0.51946083058290672, -0.14865766401220140};

// ---- bounded-function convolutions ---------------------------------------

// Poisson extension of (1+r)^{-1} on R at heights 0.5 and 0.01
inline const double kInvlinPoissonT05 = 0.62349151987787873;
inline const double kInvlinPoissonT001 = 0.97058551749307358;

// ball average of 3 + (1+r)^{-1/2} on R at t = 1e6:  3 + 2(sqrt(1+t)-1)/t
inline const double kPlateauBallT1e6 = 3.0019980009999998;

// (1+r) dx restricted to the unit ball in R^2, smoothed by the heat kernel
// at scale 0.2, evaluated at the center
inline const double kAffineHeatN2S02 = 1.3504856011745570;

}  // namespace refvals
