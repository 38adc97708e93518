#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace crn {

/// Canonical enumeration of the subsets of k node indices, grouped by
/// increasing cardinality. Within a cardinality block the order is fixed
/// by the recursive construction: subsets of the first k-1 nodes come
/// first, then subsets containing node k, ordered like their restriction
/// to the first k-1 nodes. All pmf vectors and incidence matrices in this
/// library share this one ordering. Node i maps to mask bit i-1.
///
/// The ordering is self-complementary: reversing the full sequence maps
/// every subset to its complement.
class SubsetIndexer {
public:
    /// Builds the enumeration for k nodes. Throws SizeLimit unless 1 <= k <= 16.
    explicit SubsetIndexer(int k);

    [[nodiscard]] int node_count() const { return k_; }
    [[nodiscard]] int size() const { return static_cast<int>(masks_.size()); }

    /// Bitmask of the subset at canonical position j.
    [[nodiscard]] std::uint32_t mask(int j) const { return masks_[static_cast<std::size_t>(j)]; }
    /// Canonical position of a subset given as a bitmask.
    [[nodiscard]] int index_of(std::uint32_t mask) const {
        return index_of_[static_cast<std::size_t>(mask)];
    }

    /// C(k, m), the size of the cardinality-m block.
    [[nodiscard]] int block_size(int m) const { return block_sizes_[static_cast<std::size_t>(m)]; }
    /// Start position of the cardinality-m block.
    [[nodiscard]] int block_offset(int m) const {
        return block_offsets_[static_cast<std::size_t>(m)];
    }
    /// S_m = C(k,0) + ... + C(k,m), the length of an order-m marginal vector.
    [[nodiscard]] int prefix_size(int m) const { return block_offsets_[static_cast<std::size_t>(m) + 1]; }

    /// Incidence matrix between n-subsets (rows) and m-subsets (columns):
    /// entry (i,j) is 1 iff the j-th m-subset contains the i-th n-subset.
    [[nodiscard]] Eigen::MatrixXi incidence(int n, int m) const;

    /// k x 2^k matrix whose column j is the 0/1 membership pattern of
    /// subset j (row i = node i+1).
    [[nodiscard]] Eigen::MatrixXi pattern_matrix() const;

private:
    int k_;
    std::vector<std::uint32_t> masks_;
    std::vector<int> index_of_;
    std::vector<int> block_sizes_;
    std::vector<int> block_offsets_; // k+2 entries, block_offsets_[m+1] = S_m
};

/// Conditional joint pmf of the reports of k cooperative nodes under
/// hypothesis s (receiver side available: s=1, busy: s=0). values[j] is
/// the probability that exactly the nodes in subset j report available.
struct JointPmf {
    int s = 1;
    int k = 1;
    Eigen::VectorXd values;
};

/// Stacked marginal probabilities up to order m under hypothesis s:
/// a leading 1, then for each subset J with |J| <= m (canonical order)
/// the probability that every node in J reports s.
struct MarginalSet {
    int s = 1;
    int m = 0;
    int k = 1;
    Eigen::VectorXd values; // length S_m
};

/// Linear map from a joint pmf to its order-m marginal stack. The square
/// block acting on the determined part of the joint vector is unipotent
/// block-triangular with a closed-form inverse (see invert_square_block).
struct GMatrix {
    int s = 1;
    int m = 0;
    int k = 1;
    Eigen::MatrixXi dense; // S_m x 2^k, entries 0/1

    /// The invertible S_m x S_m block: leading columns for s=1, trailing
    /// columns for s=0.
    [[nodiscard]] Eigen::MatrixXi square_block() const;
    /// The complementary S_m x (2^k - S_m) block.
    [[nodiscard]] Eigen::MatrixXi rect_block() const;
    /// True iff square_block() multiplies the leading entries of the joint
    /// vector (s=1); false when it multiplies the trailing entries (s=0).
    [[nodiscard]] bool square_covers_front() const { return s == 1; }
};

/// Marginalization operator of order m for k nodes under hypothesis s.
GMatrix build_g(const SubsetIndexer& idx, int s, int m);

/// Closed-form inverse of g.square_block(), exact in integer arithmetic.
Eigen::MatrixXi invert_square_block(const SubsetIndexer& idx, const GMatrix& g);

/// Marginal stack of order m computed from a joint pmf.
MarginalSet joint_to_marginals(const SubsetIndexer& idx, const JointPmf& p, int m);

/// Reconstructs the unique joint pmf consistent with a full order-(k-1)
/// marginal stack plus the order-k joint probability (the probability that
/// all k nodes report s). Throws InvalidPmf when the inputs are infeasible;
/// entries within 1e-12 of [0,1] are clamped.
JointPmf complete_joint(const SubsetIndexer& idx, const MarginalSet& q, double tail_mass);

/// Joint pmf of independent node reports. beta_or_gamma[i] is the
/// probability that node i+1 reports s under hypothesis s (beta for s=1,
/// gamma for s=0).
JointPmf product_pmf(const SubsetIndexer& idx, int s, const std::vector<double>& beta_or_gamma);

/// Entry bounds and unit total, with tolerance for reconstruction noise.
bool is_valid_pmf(const Eigen::VectorXd& v, double tol = 1e-9);

} // namespace crn
