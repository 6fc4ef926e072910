#pragma once

#include <string>
#include <vector>

#include "ginv/inverses.hpp"

namespace ginv {

enum class Relation { gd1, onegd, drazin };

const char* relation_name(Relation r);

/// One matrix identity evaluated during a relation check.
struct IdentityCheck {
    std::string name;
    Matrix lhs;
    Matrix rhs;
    double residual = 0.0;  // rel_residual(lhs, rhs)
};

/// Outcome of a "S below T" test. `holds` reflects the defining identities
/// only; `equivalents` carries the reformulations the relation is known to be
/// equivalent to, and `consistent` records whether every reformulation agreed
/// in truth value with the definition.
struct PreorderReport {
    Relation relation = Relation::drazin;
    bool holds = false;
    double tolerance = 0.0;
    std::vector<IdentityCheck> identities;
    std::vector<IdentityCheck> equivalents;
    bool consistent = true;
    std::string notes;
};

/// X1 ~ X2 when T^d T X1 = T^d T X2; an equivalence on the inner inverses of
/// T. Equivalent inner inverses share their GD1 inverse.
bool inner_equivalent(const Matrix& t, const InnerInverse& x1, const InnerInverse& x2,
                      const ToleranceConfig& cfg = {});

/// S below T for GD1: S S^(GD-) = T S^(GD-) and S^(GD-) S = S^(GD-) T,
/// with S^(GD-) built from sm. Also evaluates the equivalent forms
/// (S S^d = T S^d etc.) and records their truth-consistency.
PreorderReport below_gd1(const Matrix& s, const Matrix& t, const InnerInverse& sm,
                         const ToleranceConfig& cfg = {});

/// Dual relation through S^(-GD) = S^- S S^d.
PreorderReport below_onegd(const Matrix& s, const Matrix& t, const InnerInverse& sm,
                           const ToleranceConfig& cfg = {});

/// Drazin pre-order: S^d S = S^d T and S S^d = T S^d.
PreorderReport below_drazin(const Matrix& s, const Matrix& t, const ToleranceConfig& cfg = {});

/// Every X with T below X (GD1 relation) has the block form
/// Q [[T1, -T1 Y X4], [0, X4]] Q^-1; this builds X from a chosen X4.
/// Y must be the top-right block parameter of the inner inverse paired with T.
Matrix construct_above_gd1(const CoreNilpotentDecomposition& dec, const Matrix& y,
                           const Matrix& x4);

/// Dual construction Q [[T1, 0], [-X4 Z T1, X4]] Q^-1 for the 1GD relation.
Matrix construct_above_onegd(const CoreNilpotentDecomposition& dec, const Matrix& z,
                             const Matrix& x4);

/// Convergence heuristic shared by po_membership and the limit checks:
/// the final term must be <= tol and the last half of the sequence must be
/// non-increasing within tol slack (an identically small sequence passes).
bool converges_to_zero(const std::vector<double>& seq, double tol);

struct PoMembershipReport {
    bool member = false;
    double drazin_norm = 0.0;      // spectral norm of S^d
    bool norm_ok = false;          // drazin_norm <= 1 + eq_tol
    bool sequence_vanishes = false;
    bool overflow = false;         // power norms exceeded the divergence cap
    double final_term = 0.0;
    std::vector<double> sequence;  // difference norms, n = 1..n_max
    std::string note;
};

/// Membership in the set where the relation is a pre-order:
/// ||S^d|| <= 1 and the variant-specific difference sequence tends to zero.
///   gd1:   ||S^(n+2) S^d S^- - S^(n+1) S^d||
///   onegd: ||S^- S^(n+2) S^d - S^(n+1) S^d||
/// Power norms above 1e100 abort the scan and report a non-member.
PoMembershipReport po_membership(const Matrix& s, const InnerInverse& sm, Relation variant,
                                 int n_max = 64, const ToleranceConfig& cfg = {});

}  // namespace ginv
