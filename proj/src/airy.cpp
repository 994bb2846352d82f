#include "tswave/airy.hpp"
#include "tswave/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace tswave {

namespace {

constexpr double kAi0 = 0.355028053887817239260063186004183;
constexpr double kAip0 = -0.258819403792806798405183560189203;
constexpr int kAsyTerms = 60;
constexpr double kContinuationStart = 20.0;
constexpr double kStep = 0.5;

const cplx kOmega{-0.5, 0.866025403784438646763723170752936};

// Coefficients of the asymptotic series in powers of 1/zeta for Ai, Ai', Ai(1,.), Ai(2,.).
struct AsyCoefficients {
    std::array<double, kAsyTerms> ai, aip, ai1, ai2;
    AsyCoefficients() {
        std::array<long double, kAsyTerms> u{};
        u[0] = 1.0L;
        for (int k = 1; k < kAsyTerms; ++k)
            u[k] = u[k - 1] * (6.0L * k - 5) * (6.0L * k - 3) * (6.0L * k - 1) / ((2.0L * k - 1) * 216.0L * k);
        // prod_{j=1}^{m} (a - j)
        auto falling = [](long double a, int m) {
            long double p = 1.0L;
            for (int j = 1; j <= m; ++j) p *= (a - j);
            return p;
        };
        std::array<long double, kAsyTerms> b{};
        for (int n = 0; n < kAsyTerms; ++n) {
            ai[n] = static_cast<double>((n % 2 ? -1.0L : 1.0L) * u[n]);
            long double v = n == 0 ? 1.0L : -(6.0L * n + 1) / (6.0L * n - 1) * u[n];
            aip[n] = static_cast<double>((n % 2 ? -1.0L : 1.0L) * v);
            long double s = 0;
            for (int k = 0; k <= n; ++k) {
                long double sgn = (k % 2) ? -1.0L : 1.0L;
                s += sgn * u[k] * falling(0.5L - k, n - k);
            }
            b[n] = s;
            ai1[n] = static_cast<double>(s);
        }
        for (int n = 0; n < kAsyTerms; ++n) {
            long double s = 0;
            for (int k = 0; k <= n; ++k) s += b[k] * falling(1.0L / 6.0L - k, n - k);
            ai2[n] = static_cast<double>(s);
        }
    }
};

const AsyCoefficients& asy() {
    static const AsyCoefficients c;
    return c;
}

// Optimally truncated sum of coef[n] * x^n; returns the sum and the size of the last term kept.
cplx asySum(const std::array<double, kAsyTerms>& coef, cplx x, double& lastTerm) {
    cplx sum = 0, p = 1;
    double prev = std::numeric_limits<double>::infinity();
    lastTerm = 0;
    for (int n = 0; n < kAsyTerms; ++n) {
        cplx t = coef[n] * p;
        double at = std::abs(t);
        if (n > 1 && at > prev) break;
        sum += t;
        lastTerm = at;
        if (at < 1e-17 * std::abs(sum)) break;
        prev = at;
        p *= x;
    }
    return sum;
}

ScaledAiry fromBundle(const AiryBundle& b) {
    ScaledAiry s;
    s.ai = b.ai;
    s.aiPrime = b.aiPrime;
    s.ai1 = b.ai1;
    s.ai2 = b.ai2;
    s.logScale = 0;
    s.method = b.method;
    s.estError = b.estError;
    return s;
}

ScaledAiry connection(cplx z) {
    ScaledAiry A = airyScaled(kOmega * z);
    ScaledAiry B = airyScaled(kOmega * kOmega * z);
    ScaledAiry r;
    r.logScale = std::max({A.logScale, B.logScale, 0.0});
    double ea = std::exp(A.logScale - r.logScale);
    double eb = std::exp(B.logScale - r.logScale);
    double e0 = std::exp(-r.logScale);
    cplx w = kOmega, w2 = kOmega * kOmega;
    r.ai = -w * A.ai * ea - w2 * B.ai * eb;
    r.aiPrime = -w2 * A.aiPrime * ea - w * B.aiPrime * eb;
    r.ai1 = -e0 - A.ai1 * ea - B.ai1 * eb;
    r.ai2 = -z * e0 - w2 * A.ai2 * ea - w * B.ai2 * eb;
    r.method = (A.method == AiryMethod::Asymptotic || B.method == AiryMethod::Asymptotic) ? AiryMethod::Asymptotic
                                                                                           : AiryMethod::Series;
    r.estError = std::max(A.estError, B.estError);
    return r;
}

} // namespace

const char* airyMethodName(AiryMethod m) {
    switch (m) {
    case AiryMethod::Series: return "series";
    case AiryMethod::Asymptotic: return "asymptotic";
    default: return "quadrature";
    }
}

void airyTaylorStep(cplx zc, cplx h, cplx& ai, cplx& aip, cplx& ai1, cplx& ai2) {
    // Coefficients a_n of Ai about zc from Ai'' = z Ai: a_n = (zc a_{n-2} + a_{n-3}) / (n (n-1)).
    std::vector<cplx> a{ai, aip};
    a.reserve(128);
    cplx sAi = a[0] + a[1] * h;
    cplx sAip = a[1];
    cplx s1 = a[0] * h + a[1] * h * h / 2.0;
    cplx s2 = a[0] * h * h / 2.0 + a[1] * h * h * h / 6.0;
    cplx hn1 = h;  // h^{n-1}
    double scale = std::abs(ai) + std::abs(aip * h) + 1e-300;
    int quiet = 0;
    for (int n = 2; n < 400; ++n) {
        cplx an = zc * a[n - 2];
        if (n >= 3) an += a[n - 3];
        an /= static_cast<double>(n) * (n - 1);
        a.push_back(an);
        cplx hn = hn1 * h;
        cplx t = an * hn;
        sAi += t;
        sAip += static_cast<double>(n) * an * hn1;
        s1 += t * h / static_cast<double>(n + 1);
        s2 += t * h * h / (static_cast<double>(n + 1) * (n + 2));
        hn1 = hn;
        double at = std::abs(t);
        scale = std::max(scale, at);
        if (at * (1.0 + n) < 1e-18 * scale) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    ai2 = ai2 + ai1 * h + s2;
    ai1 = ai1 + s1;
    ai = sAi;
    aip = sAip;
}

AiryBundle airyMaclaurin(cplx z) {
    cplx ai = kAi0, aip = kAip0, ai1 = -1.0 / 3.0, ai2 = -kAip0;
    airyTaylorStep(0.0, z, ai, aip, ai1, ai2);
    AiryBundle b{ai, aip, ai1, ai2, AiryMethod::Series, 0.0};
    double mag = std::exp(2.0 / 3.0 * std::pow(std::abs(z), 1.5));
    b.estError = 1e-16 * mag;
    return b;
}

ScaledAiry airyAsymptotic(cplx z) {
    const auto& C = asy();
    cplx sq = std::sqrt(z);
    cplx zeta = 2.0 / 3.0 * z * sq;
    cplx x = 1.0 / zeta;
    cplx lz = std::log(z);
    double l0, l1, l2, l3;
    cplx S0 = asySum(C.ai, x, l0);
    cplx S1 = asySum(C.aip, x, l1);
    cplx S2 = asySum(C.ai1, x, l2);
    cplx S3 = asySum(C.ai2, x, l3);
    const double pref = 0.5 / std::sqrt(kPi);
    cplx ph = std::exp(cplx(0.0, -zeta.imag()));
    ScaledAiry r;
    r.logScale = -zeta.real();
    r.ai = pref * ph * std::exp(-0.25 * lz) * S0;
    r.aiPrime = -pref * ph * std::exp(0.25 * lz) * S1;
    r.ai1 = -pref * ph * std::exp(-0.75 * lz) * S2;
    r.ai2 = pref * ph * std::exp(-1.25 * lz) * S3;
    r.method = AiryMethod::Asymptotic;
    r.estError = std::max({l0 / std::abs(S0), l1 / std::abs(S1), l2 / std::abs(S2), l3 / std::abs(S3)});
    return r;
}

ScaledAiry airyContinuation(cplx z) {
    double r = std::abs(z);
    if (r <= kAirySeriesRadius) return fromBundle(airyMaclaurin(z));
    double th = std::arg(z);
    cplx dir = std::polar(1.0, th);
    cplx ai, aip, ai1, ai2;
    double r0;
    double est;
    if (std::abs(th) <= kPi / 3.0) {
        // Inward from a large radius: Ai is dominant in this direction.
        r0 = std::max(kContinuationStart, r + 4.0);
        ScaledAiry s = airyAsymptotic(r0 * dir);
        double e = std::exp(s.logScale);
        ai = s.ai * e; aip = s.aiPrime * e; ai1 = s.ai1 * e; ai2 = s.ai2 * e;
        est = s.estError;
    } else {
        r0 = kAirySeriesRadius;
        AiryBundle b = airyMaclaurin(r0 * dir);
        ai = b.ai; aip = b.aiPrime; ai1 = b.ai1; ai2 = b.ai2;
        est = 1e-15;
    }
    int steps = std::max(1, static_cast<int>(std::ceil(std::abs(r - r0) / kStep)));
    cplx h = (r - r0) / steps * dir;
    cplx zc = r0 * dir;
    for (int k = 0; k < steps; ++k) {
        airyTaylorStep(zc, h, ai, aip, ai1, ai2);
        zc += h;
    }
    ScaledAiry out;
    out.ai = ai; out.aiPrime = aip; out.ai1 = ai1; out.ai2 = ai2;
    out.logScale = 0;
    out.method = AiryMethod::Series;
    out.estError = est + 1e-15 * steps;
    return out;
}

ScaledAiry airyScaled(cplx z) {
    double r = std::abs(z);
    if (!std::isfinite(r)) throw DomainError("Airy argument is not finite");
    if (r > kAiryRadiusCap) throw DomainError("Airy argument exceeds the radius cap 1e4");
    if (r <= kAirySeriesRadius) return fromBundle(airyMaclaurin(z));
    if (r < kAiryAsymptoticRadius) return airyContinuation(z);
    if (std::abs(std::arg(z)) <= 2.0 * kPi / 3.0 + 1e-12) return airyAsymptotic(z);
    return connection(z);
}

AiryBundle airyEval(cplx z) {
    ScaledAiry s = airyScaled(z);
    if (s.logScale > 700.0) {
        std::ostringstream os;
        os << "Airy values overflow at z = " << z << ": scaled exponent " << s.logScale;
        throw NumericalError(os.str());
    }
    double e = std::exp(s.logScale);
    return AiryBundle{s.ai * e, s.aiPrime * e, s.ai1 * e, s.ai2 * e, s.method, s.estError};
}

cplx airyRatio(cplx z0) {
    ScaledAiry s = airyScaled(z0);
    if (std::abs(s.ai2) < 1e-300) throw NumericalError("Ai(2, z0) underflows; z0 outside the validated sector");
    return s.ai1 / s.ai2;
}

AiryBundle airyQuadrature(cplx z, double tol) {
    const cplx e6 = std::polar(1.0, kPi / 6.0);
    // Ai decays like exp(-(2/3) t^{3/2}) along the ray; 40 + 2|z| covers it to far below tol.
    const int panels = static_cast<int>(std::ceil(40.0 + 2.0 * std::abs(z)));
    auto f1 = [&](double t) { return airyEval(z + t * e6).ai; };
    auto f2 = [&](double t) { return t * airyEval(z + t * e6).ai; };
    // Unit panels; the tolerance is relative to a first Kronrod pass so round-off cannot stall refinement.
    auto ray = [&](const auto& f, double& err) {
        double mag = 0;
        for (int k = 0; k < panels; ++k) mag += std::abs(gk15(f, k, k + 1.0).value);
        const double ptol = tol * std::max(mag, 1e-300) / panels;
        cplx sum = 0;
        err = 0;
        for (int k = 0; k < panels; ++k) {
            QuadResult q = integrate(f, k, k + 1.0, ptol, 20);
            sum += q.value;
            err += q.errEst;
        }
        return sum;
    };
    double e1, e2;
    cplx q1 = ray(f1, e1), q2 = ray(f2, e2);
    AiryBundle b = airyEval(z);
    b.ai1 = -e6 * q1;
    b.ai2 = e6 * e6 * q2;
    b.method = AiryMethod::Quadrature;
    b.estError = e1 + e2;
    return b;
}

std::vector<OverlapEntry> airyOverlapMatrix(const RVec& radii, const RVec& args) {
    std::vector<OverlapEntry> out;
    for (double r : radii) {
        for (double th : args) {
            cplx z = std::polar(r, th);
            ScaledAiry a = std::abs(th) <= 2.0 * kPi / 3.0 + 1e-12 ? airyAsymptotic(z) : connection(z);
            ScaledAiry b = airyContinuation(z);
            double e = std::exp(a.logScale - b.logScale);
            cplx va[4] = {a.ai * e, a.aiPrime * e, a.ai1 * e, a.ai2 * e};
            cplx vb[4] = {b.ai, b.aiPrime, b.ai1, b.ai2};
            double d = 0;
            for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(va[k] - vb[k]) / std::abs(vb[k]));
            out.push_back({r, th, d});
        }
    }
    return out;
}

} // namespace tswave
