#pragma once

#include "tswave/types.hpp"

namespace tswave {

enum class AiryMethod { Series, Asymptotic, Quadrature };

const char* airyMethodName(AiryMethod m);

// Ai, Ai', and the primitives Ai(1,z), Ai(2,z) that vanish along e^{i pi/6} R+.
struct AiryBundle {
    cplx ai, aiPrime, ai1, ai2;
    AiryMethod method = AiryMethod::Series;
    double estError = 0;
};

// Same quantities with a common real exponent factored out: true value = field * exp(logScale).
struct ScaledAiry {
    cplx ai, aiPrime, ai1, ai2;
    double logScale = 0;
    AiryMethod method = AiryMethod::Series;
    double estError = 0;
};

inline constexpr double kAiryAsymptoticRadius = 14.0;
inline constexpr double kAirySeriesRadius = 3.0;
inline constexpr double kAiryRadiusCap = 1e4;

ScaledAiry airyScaled(cplx z);
// Throws NumericalError (with the exponent in the message) when the value overflows.
AiryBundle airyEval(cplx z);
// Ai(1,z0)/Ai(2,z0), evaluated in scaled form so large |z0| is safe.
cplx airyRatio(cplx z0);

// Individual routes, exposed for overlap testing.
ScaledAiry airyAsymptotic(cplx z);       // valid for |arg z| <= 2pi/3, large |z|
AiryBundle airyMaclaurin(cplx z);        // series about 0
ScaledAiry airyContinuation(cplx z);     // Taylor stepping of the Airy ODE along the ray through z
AiryBundle airyQuadrature(cplx z, double tol = 1e-13);  // ray integrals of Ai

// Moves values of the four functions from zc to zc + h by the Taylor series of the ODE.
void airyTaylorStep(cplx zc, cplx h, cplx& ai, cplx& aip, cplx& ai1, cplx& ai2);

struct OverlapEntry {
    double radius, arg, relDiff;
};
// Relative max difference between asymptotic and continuation values for each (radius, arg).
std::vector<OverlapEntry> airyOverlapMatrix(const RVec& radii, const RVec& args);

} // namespace tswave
