#include "ginv/relations.hpp"

#include <algorithm>
#include <cmath>

namespace ginv {

namespace {

constexpr double kDivergenceCap = 1e100;

IdentityCheck identity(std::string name, Matrix lhs, Matrix rhs) {
    IdentityCheck c;
    c.residual = rel_residual(lhs, rhs);
    c.name = std::move(name);
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    return c;
}

bool all_within(const std::vector<IdentityCheck>& checks, double tol) {
    return std::all_of(checks.begin(), checks.end(),
                       [tol](const IdentityCheck& c) { return c.residual <= tol; });
}

void require_square_pair(const Matrix& s, const Matrix& t, const char* who) {
    if (s.rows() != s.cols() || t.rows() != t.cols()) {
        throw NotSquare(std::string(who) + ": operands must be square");
    }
    if (s.rows() != t.rows()) {
        throw ShapeMismatch(std::string(who) + ": operands must have equal dimension");
    }
}

void require_inner_of(const Matrix& s, const InnerInverse& sm, const ToleranceConfig& cfg,
                      const char* who) {
    if (sm.value.rows() != s.cols() || sm.value.cols() != s.rows()) {
        throw ShapeMismatch(std::string(who) + ": inner inverse has the wrong shape");
    }
    if ((s * sm.value * s - s).norm() > cfg.eq_tol * std::max(1.0, s.norm())) {
        throw InvalidInnerInverse(std::string(who) + ": ||S X S - S|| exceeds eq_tol");
    }
}

}  // namespace

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::gd1: return "gd1";
        case Relation::onegd: return "onegd";
        case Relation::drazin: return "drazin";
    }
    return "unknown";
}

bool inner_equivalent(const Matrix& t, const InnerInverse& x1, const InnerInverse& x2,
                      const ToleranceConfig& cfg) {
    require_inner_of(t, x1, cfg, "inner_equivalent");
    require_inner_of(t, x2, cfg, "inner_equivalent");
    const Matrix dt = drazin(t, cfg) * t;
    return approx_eq(dt * x1.value, dt * x2.value, cfg);
}

PreorderReport below_gd1(const Matrix& s, const Matrix& t, const InnerInverse& sm,
                         const ToleranceConfig& cfg) {
    require_square_pair(s, t, "below_gd1");
    require_inner_of(s, sm, cfg, "below_gd1");

    const Matrix sd = drazin(s, cfg);
    const Matrix g = sd * s * sm.value;

    PreorderReport rep;
    rep.relation = Relation::gd1;
    rep.tolerance = cfg.eq_tol;
    rep.identities.push_back(identity("S S_gd1 = T S_gd1", s * g, t * g));
    rep.identities.push_back(identity("S_gd1 S = S_gd1 T", g * s, g * t));
    rep.holds = all_within(rep.identities, cfg.eq_tol);

    rep.equivalents.push_back(identity("S S^d = T S^d", s * sd, t * sd));
    rep.equivalents.push_back(identity("S^d = S^d S^- T", sd, sd * sm.value * t));
    rep.equivalents.push_back(identity("S S^d S = S S_gd1 T", s * sd * s, s * g * t));
    rep.equivalents.push_back(identity("S S_gd1 T = T S S^d", s * g * t, t * s * sd));
    rep.equivalents.push_back(identity("S S^d = S_gd1 T", s * sd, g * t));
    rep.equivalents.push_back(identity("S_gd1 T = T S^d", g * t, t * sd));

    const double tol = cfg.eq_tol;
    const bool d1 = rep.identities[0].residual <= tol;
    const bool d2 = rep.identities[1].residual <= tol;
    const bool e1 = rep.equivalents[0].residual <= tol;
    const bool e2 = rep.equivalents[1].residual <= tol;
    const bool chain_a = rep.equivalents[2].residual <= tol && rep.equivalents[3].residual <= tol;
    const bool chain_b = rep.equivalents[4].residual <= tol && rep.equivalents[5].residual <= tol;
    rep.consistent = (d1 == e1) && (d2 == e2) && (chain_a == rep.holds) && (chain_b == rep.holds);
    return rep;
}

PreorderReport below_onegd(const Matrix& s, const Matrix& t, const InnerInverse& sm,
                           const ToleranceConfig& cfg) {
    require_square_pair(s, t, "below_onegd");
    require_inner_of(s, sm, cfg, "below_onegd");

    const Matrix sd = drazin(s, cfg);
    const Matrix h = sm.value * s * sd;

    PreorderReport rep;
    rep.relation = Relation::onegd;
    rep.tolerance = cfg.eq_tol;
    rep.identities.push_back(identity("S S_1gd = T S_1gd", s * h, t * h));
    rep.identities.push_back(identity("S_1gd S = S_1gd T", h * s, h * t));
    rep.holds = all_within(rep.identities, cfg.eq_tol);

    rep.equivalents.push_back(identity("S^d S = S^d T", sd * s, sd * t));
    rep.equivalents.push_back(identity("S^d = T S^- S^d", sd, t * sm.value * sd));
    rep.equivalents.push_back(identity("S S^d S = T S_1gd S", s * sd * s, t * h * s));
    rep.equivalents.push_back(identity("T S_1gd S = S S^d T", t * h * s, s * sd * t));
    rep.equivalents.push_back(identity("S S^d = T S_1gd", s * sd, t * h));
    rep.equivalents.push_back(identity("T S_1gd = S^d T", t * h, sd * t));

    const double tol = cfg.eq_tol;
    const bool d1 = rep.identities[0].residual <= tol;
    const bool d2 = rep.identities[1].residual <= tol;
    const bool e1 = rep.equivalents[0].residual <= tol;  // pairs with S_1gd S = S_1gd T
    const bool e2 = rep.equivalents[1].residual <= tol;  // pairs with S S_1gd = T S_1gd
    const bool chain_a = rep.equivalents[2].residual <= tol && rep.equivalents[3].residual <= tol;
    const bool chain_b = rep.equivalents[4].residual <= tol && rep.equivalents[5].residual <= tol;
    rep.consistent = (d2 == e1) && (d1 == e2) && (chain_a == rep.holds) && (chain_b == rep.holds);
    return rep;
}

PreorderReport below_drazin(const Matrix& s, const Matrix& t, const ToleranceConfig& cfg) {
    require_square_pair(s, t, "below_drazin");
    const Matrix sd = drazin(s, cfg);

    PreorderReport rep;
    rep.relation = Relation::drazin;
    rep.tolerance = cfg.eq_tol;
    rep.identities.push_back(identity("S^d S = S^d T", sd * s, sd * t));
    rep.identities.push_back(identity("S S^d = T S^d", s * sd, t * sd));
    rep.holds = all_within(rep.identities, cfg.eq_tol);
    return rep;
}

Matrix construct_above_gd1(const CoreNilpotentDecomposition& dec, const Matrix& y,
                           const Matrix& x4) {
    const Eigen::Index r = dec.T1.rows();
    const Eigen::Index s = dec.T2.rows();
    if (y.rows() != r || y.cols() != s) {
        throw ShapeMismatch("construct_above_gd1: Y must be r x s");
    }
    if (x4.rows() != s || x4.cols() != s) {
        throw ShapeMismatch("construct_above_gd1: X4 must be s x s");
    }
    Matrix blocks = Matrix::Zero(r + s, r + s);
    if (r > 0) blocks.topLeftCorner(r, r) = dec.T1;
    if (r > 0 && s > 0) blocks.topRightCorner(r, s) = -dec.T1 * y * x4;
    if (s > 0) blocks.bottomRightCorner(s, s) = x4;
    return dec.Q * blocks * dec.Qinv;
}

Matrix construct_above_onegd(const CoreNilpotentDecomposition& dec, const Matrix& z,
                             const Matrix& x4) {
    const Eigen::Index r = dec.T1.rows();
    const Eigen::Index s = dec.T2.rows();
    if (z.rows() != s || z.cols() != r) {
        throw ShapeMismatch("construct_above_onegd: Z must be s x r");
    }
    if (x4.rows() != s || x4.cols() != s) {
        throw ShapeMismatch("construct_above_onegd: X4 must be s x s");
    }
    Matrix blocks = Matrix::Zero(r + s, r + s);
    if (r > 0) blocks.topLeftCorner(r, r) = dec.T1;
    if (r > 0 && s > 0) blocks.bottomLeftCorner(s, r) = -x4 * z * dec.T1;
    if (s > 0) blocks.bottomRightCorner(s, s) = x4;
    return dec.Q * blocks * dec.Qinv;
}

bool converges_to_zero(const std::vector<double>& seq, double tol) {
    if (seq.empty()) return false;
    if (!(seq.back() <= tol)) return false;
    for (std::size_t i = seq.size() / 2; i + 1 < seq.size(); ++i) {
        if (seq[i + 1] > seq[i] + tol) return false;
    }
    return true;
}

PoMembershipReport po_membership(const Matrix& s, const InnerInverse& sm, Relation variant,
                                 int n_max, const ToleranceConfig& cfg) {
    if (variant == Relation::drazin) {
        throw InvalidSpec("po_membership: variant must be gd1 or onegd");
    }
    if (n_max < 8) throw InvalidSpec("po_membership: n_max must be >= 8");
    if (s.rows() != s.cols()) throw NotSquare("po_membership: matrix must be square");
    require_inner_of(s, sm, cfg, "po_membership");

    PoMembershipReport rep;
    const Matrix sd = drazin(s, cfg);
    rep.drazin_norm = spectral_norm(sd);
    rep.norm_ok = rep.drazin_norm <= 1.0 + cfg.eq_tol;

    // q holds S^(n+1) S^d while scanning n = 1..n_max.
    Matrix q = s * (s * sd);
    rep.sequence.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        const Matrix next = s * q;  // S^(n+2) S^d
        const double term = (variant == Relation::gd1) ? (next * sm.value - q).norm()
                                                       : (sm.value * next - q).norm();
        rep.sequence.push_back(term);
        if (!std::isfinite(term) || next.norm() > kDivergenceCap) {
            rep.overflow = true;
            rep.note = "power norms exceeded the divergence cap";
            break;
        }
        q = next;
    }
    rep.final_term = rep.sequence.empty() ? 0.0 : rep.sequence.back();
    rep.sequence_vanishes = !rep.overflow && converges_to_zero(rep.sequence, cfg.eq_tol);
    rep.member = rep.norm_ok && rep.sequence_vanishes;
    if (!rep.member && rep.note.empty()) {
        rep.note = rep.norm_ok ? "difference sequence does not vanish"
                               : "spectral norm of S^d exceeds 1";
    }
    return rep;
}

}  // namespace ginv
