#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ginv/relations.hpp"

namespace ginv::verify {

/// Deterministic random stream: splitmix64 for raw bits, Box-Muller for
/// normals. Hand-rolled so that identical seeds give identical matrices on
/// every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform01();                    // [0, 1), 53-bit resolution
    double uniform(double lo, double hi);  // [lo, hi)
    Complex normal();                      // independent re, im ~ N(0, 1)
    Matrix gaussian(Eigen::Index rows, Eigen::Index cols);
    Matrix unitary(Eigen::Index n);  // Haar-like: QR of a Gaussian, phases fixed

private:
    std::uint64_t state_;
};

/// Per-instance seed: splitmix64 applied to
/// master XOR fnv1a64(label) + index * 0x9E3779B97F4A7C15.
/// Splittable, order-independent, and stable across platforms.
std::uint64_t derive_seed(std::uint64_t master, const std::string& label, std::uint64_t index);

/// Recipe for a random test matrix with prescribed index.
struct InstanceSpec {
    int dimension = 2;              // 1..64
    int target_index = 0;           // 0..dimension
    double core_spectral_radius = 1.0;
    std::uint64_t seed = 0;
};

/// Q diag(C, N) Q^-1 with C a random invertible block whose spectral radius
/// equals core_spectral_radius (eigenvalue magnitudes in [radius/2, radius]),
/// N a nilpotent staircase of order exactly target_index, and Q a random
/// unitary times a mild diagonal scaling (condition <= 4). The index of the
/// result is verified post-construction by rank stabilization.
Matrix random_with_index(const InstanceSpec& spec, const ToleranceConfig& cfg = {});

/// Instance lying in the pre-order set of both variants: ||S^d|| <= 1
/// (unitary Q, core built with singular values in [1, radius]) and vanishing
/// difference sequences (inner inverse with zero off-diagonal blocks, the
/// bottom-right drawn from the nilpotent block's inner family). radius must
/// lie in [1, 1.1]: the 64-term power sequence accumulates rounding noise of
/// order radius^66 * 1e-13, which must stay far below the vanishing
/// threshold. Returns the matrix and its membership inner inverse.
std::pair<Matrix, InnerInverse> po_member_instance(int dimension, int target_index, double radius,
                                                   std::uint64_t seed,
                                                   const ToleranceConfig& cfg = {});

struct TheoremCheckReport {
    std::string theorem_id;
    bool passed = false;
    std::vector<std::pair<std::string, double>> residuals;
    std::string fingerprint;  // "dim=..;index=..;seed=.." once known
    std::string notes;
};

struct TheoremInfo {
    std::string id;
    std::string statement;
    int operands = 1;         // 1: (T, T^-); 2: (S, S^-) plus a second matrix
    bool uses_inner = true;   // false for purely Drazin statements
    std::string notes;
};

/// Every verifiable statement the library asserts, keyed by stable id.
const std::vector<TheoremInfo>& theorem_registry();

/// Evaluate one registered statement on concrete operands. Binary statements
/// require `extra`; unary ones reject it. Unknown ids raise UnknownTheorem.
TheoremCheckReport check(const std::string& theorem_id, const Matrix& t, const InnerInverse& tm,
                         const std::optional<Matrix>& extra = std::nullopt,
                         const ToleranceConfig& cfg = {});

struct FuzzTheoremSummary {
    std::string id;
    bool passed = true;
    int instances = 0;
    int failures = 0;
    double max_residual = 0.0;
    std::string max_residual_name;
    std::uint64_t seed = 0;  // first failing seed, else the max-residual seed
    std::vector<TheoremCheckReport> failure_reports;
};

struct FuzzReport {
    bool passed = true;
    std::uint64_t master_seed = 0;
    int count = 0;
    std::vector<FuzzTheoremSummary> checks;
};

/// Run every registry theorem over `count` freshly generated instances each.
/// Dimensions cycle over [dim_lo, dim_hi], target indices over
/// [idx_lo, idx_hi] (clamped to the dimension), core radii over
/// {0.5, 1.0, 2.0}. Inner inverses alternate between the free-parameter
/// sample and the structured block construction. Deterministic for a fixed
/// master seed.
FuzzReport fuzz(int dim_lo, int dim_hi, int idx_lo, int idx_hi, int count, std::uint64_t seed,
                const ToleranceConfig& cfg = {});

/// Finite section of the weighted-shift style example: the 3x3 worked matrix
/// in the top corner plus diag((2n-1)/n), n = 4..N. Checks the known Drazin
/// inverse entrywise and the GD1 block pattern for sampled inner inverses.
TheoremCheckReport l2_example(int n, const ToleranceConfig& cfg = {});

/// The 3x3 block of the sequence-space example and its Drazin inverse.
Matrix l2_example_head();
Matrix l2_example_head_drazin();

}  // namespace ginv::verify
