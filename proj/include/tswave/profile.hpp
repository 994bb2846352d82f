#pragma once

#include "tswave/types.hpp"

#include <string>

namespace tswave {

enum class ProfileKind { Exponential, Tanh, Tabulated };

// Background shear flow U_s(Y). Analytic kinds use closed forms; a tabulated
// profile is differentiated by local polynomial fits (accuracy warning applies).
class ShearProfile {
public:
    static ShearProfile exponential();
    static ShearProfile tanhProfile();
    static ShearProfile tabulated(RVec Y, RVec U);
    static ShearProfile fromName(const std::string& name);

    ProfileKind kind() const { return kind_; }
    std::string name() const;
    int maxOrder() const { return kind_ == ProfileKind::Tabulated ? 3 : 4; }

    // d^order U_s / dY^order at Y >= 0.
    double eval(double Y, int order = 0) const;
    // 1 - U_s(Y) without the cancellation of forming it from U_s.
    double deficit(double Y) const;
    // Values U, U', U'', U''' at Y in one call.
    void eval4(double Y, double out[4]) const;

private:
    ProfileKind kind_ = ProfileKind::Exponential;
    RVec tabY_, tabU_;
    double tabulatedDeriv(double Y, int order) const;
};

double evalProfile(const ShearProfile& p, double Y, int order);

struct ValidationReport {
    double s0 = 0, s1 = 0, s2 = 0;
    double sigma1 = 0;        // lower bound used for H
    double sigma2 = 0;        // max over the three derivative ratios
    double a3Sum = 0;         // max over Y of the summed ratios
    double minH = 0;
    double argMinH = 0;
    double concavityMargin = 0;  // min(-U''/U'^2) - sigma1/(1-M^2)
    bool passA0 = false, passA1 = false, passA2 = false, passA3 = false, passA4 = false;
    bool passAll() const { return passA0 && passA1 && passA2 && passA3 && passA4; }
};

ValidationReport validate(const ShearProfile& p, double M, const RVec& grid);

// Hybrid grid for profile checks: geometric near the wall, uniform further out.
RVec validationGrid(double Ymax, int N);

struct StructuralFunctions {
    RVec Y;
    CVec A;
    cplx Ainf;
    RVec H;
    CVec w;
    RVec w0, w1;
};

StructuralFunctions structural(const ShearProfile& p, double M, cplx c, const RVec& grid);

// H(Y) evaluated from U, U', U''.
double structuralH(double U, double U1, double U2, double M);
// w0 - U w1 assembled directly from w0 and w1.
double w0MinusUw1Direct(double U, double U1, double U2, double M);
// The fully factored positive form of the same quantity.
double w0MinusUw1Factored(double U, double U1, double U2, double M);

struct PositivityResult {
    double margin = 0;
    bool warning = false;  // M >= 1/sqrt(3): hypothesis of the estimate not met
    double boundC = 0;     // fitted C with w0 |U''| in [1/C, C]
};

PositivityResult positivityCheck(const StructuralFunctions& s, const ShearProfile& p, double M);

} // namespace tswave
