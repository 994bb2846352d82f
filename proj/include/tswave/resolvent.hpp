#pragma once

#include "tswave/grid.hpp"
#include "tswave/mode.hpp"
#include "tswave/params.hpp"
#include "tswave/profile.hpp"

#include <Eigen/SparseLU>
#include <array>
#include <memory>

namespace tswave {

using CSparseR = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
using Rows3 = std::array<CVec, 3>;

// Graded grid for one phase speed: clustered at the wall sublayer, the critical layer
// and the slow O(1) scale. ymax <= 0 selects max(40, 25/Re beta_1).
HalfLineGrid modeGrid(const FlowParams& prm, cplx c, const ShearProfile& p, int n, double ymax = 0, int order = 4);

enum class Branch { L2, H1 };

struct IterationLog {
    RVec E;        // diagnostic norm of each Stokes step
    RVec ratios;   // E_{j+1}/E_j
    int steps = 0;
    bool converged = false;
};

struct ResolventSolution {
    ModeBundle mode;
    IterationLog log;
    double residual = 0;       // ||L(Xi) - f|| / ||f|| over the rows where L is imposed
    double residualFull = 0;   // same, including the rows replaced by boundary closures
};

// Discrete operators at fixed (params, profile, c, grid). Every operator is assembled from
// the same Fornberg matrices, so L = L_Q + E_Q and L = L_S - (0, v U', 0) hold exactly.
class ResolventSolver {
public:
    ResolventSolver(const FlowParams& prm, const ShearProfile& p, cplx c, const HalfLineGrid& g);

    const HalfLineGrid& grid() const { return *g_; }
    cplx c() const { return c_; }
    const FlowParams& params() const { return prm_; }

    // Lambda(psi) = A^{-1} psi'' + (A^{-1})' psi' - alpha^2 psi.
    CVec lambdaApply(const CVec& psi) const;
    CVec lambdaInverse(const CVec& h) const;   // psi(0) = 0, psi(Y_max) = 0

    const CSparseR& osMatrix() const { return os_; }        // no closure rows
    CSparseR classicalOsMatrix() const;                      // incompressible composition, A = 1
    const CSparseR& lambdaMatrix() const { return lam_; }
    CVec osApply(const CVec& Psi) const;
    CVec solveOSCNS(const CVec& h) const;
    CVec omegaSource(const CVec& fu, const CVec& fv) const;

    // (rho, u, v) from the stream function and the row-2 source.
    ModeBundle reconstruct(const CVec& Psi, const CVec& s1) const;
    ModeBundle solveQuasiCompressible(const CVec& s1, const CVec& s2) const;
    ModeBundle solveStokes(const CVec& q0, const CVec& q1, const CVec& q2) const;

    Rows3 applyL(const ModeBundle& b) const;
    Rows3 applyLQ(const ModeBundle& b) const;
    Rows3 applyLS(const ModeBundle& b) const;
    Rows3 applyEQ(const ModeBundle& b) const;

    // The iteration diagnostic: ||(xi/M, phi, psi)|| + ||div||_{H1}/alpha + ||xi'/M^2||/alpha.
    double diagnosticNorm(const ModeBundle& s) const;

    ResolventSolution iterate(const CVec& fu, const CVec& fv, Branch br, double tol = 1e-11, int maxIter = 60,
                              const CVec* q0 = nullptr) const;
    // Single block solve of the fixed point of the iteration, same closures.
    ModeBundle monolithic(const CVec& fu, const CVec& fv, const CVec* q0 = nullptr) const;

    // L2 norm of the three rows of L(b) - (q0, fu, fv), relative to the source norm. The rows
    // replaced by closures (row 2 at both ends, row 3 at the two end nodes on each side) are
    // left out unless closureRows is set.
    double residual(const ModeBundle& b, const CVec& q0, const CVec& fu, const CVec& fv,
                    bool closureRows = false) const;
    double l2(const CVec& f) const;
    double l2(const ModeBundle& b) const;

    // 1-norm condition estimates of the closed, row-equilibrated systems.
    double conditionOS() const;
    double conditionStokes() const;

private:
    using LU = Eigen::SparseLU<CSparse, Eigen::COLAMDOrdering<int>>;
    FlowParams prm_;
    const ShearProfile* p_;
    cplx c_;
    const HalfLineGrid* g_;
    size_t N_;
    double al_, se_, nn_, M2_;
    CVec Uc_, U1_, U2_, A_, Ainv_, A1_;
    CSparseR D1_, D2_, I_, B_, os_, lam_;
    mutable std::unique_ptr<LU> osLU_, stLU_, lamLU_;
    CSparse osClosed_;
    mutable CSparse stClosed_;
    mutable CSparse osScaled_, stScaled_, lamScaled_;   // row-equilibrated copies that are factorized
    mutable RVec osScale_, stScale_, lamScale_;

    void ensureOS() const;
    void ensureStokes() const;

    CVec d1(const CVec& f) const;
    CVec d2(const CVec& f) const;
};

double conditionEstimate(const CSparse& A, Eigen::SparseLU<CSparse, Eigen::COLAMDOrdering<int>>& lu);

} // namespace tswave
