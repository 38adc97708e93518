#include "crn/pmf_algebra.hpp"

#include <cmath>

#include "crn/errors.hpp"

namespace crn {

namespace {

// Subset masks of {1..k} with exactly m elements, in canonical order:
// subsets avoiding node k first, then subsets containing node k ordered
// like their restriction to {1..k-1}.
std::vector<std::uint32_t> masks_of_cardinality(int m, int k) {
    if (m == 0)
        return {0u};
    if (m == k)
        return {(k == 32 ? ~0u : (1u << k) - 1u)};
    std::vector<std::uint32_t> out = masks_of_cardinality(m, k - 1);
    const std::uint32_t top = 1u << (k - 1);
    for (std::uint32_t lower : masks_of_cardinality(m - 1, k - 1))
        out.push_back(lower | top);
    return out;
}

} // namespace

SubsetIndexer::SubsetIndexer(int k) : k_(k) {
    if (k < 1 || k > 16)
        throw SizeLimit("SubsetIndexer: node count must lie in [1,16]");
    block_offsets_.assign(static_cast<std::size_t>(k) + 2, 0);
    for (int m = 0; m <= k; ++m) {
        auto block = masks_of_cardinality(m, k);
        block_sizes_.push_back(static_cast<int>(block.size()));
        block_offsets_[static_cast<std::size_t>(m) + 1] =
            block_offsets_[static_cast<std::size_t>(m)] + static_cast<int>(block.size());
        masks_.insert(masks_.end(), block.begin(), block.end());
    }
    index_of_.assign(masks_.size(), -1);
    for (std::size_t j = 0; j < masks_.size(); ++j)
        index_of_[masks_[j]] = static_cast<int>(j);
}

Eigen::MatrixXi SubsetIndexer::incidence(int n, int m) const {
    const int rows = block_size(n);
    const int cols = block_size(m);
    const int row0 = block_offset(n);
    const int col0 = block_offset(m);
    Eigen::MatrixXi a(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const std::uint32_t sub = masks_[static_cast<std::size_t>(row0 + i)];
        for (int j = 0; j < cols; ++j) {
            const std::uint32_t sup = masks_[static_cast<std::size_t>(col0 + j)];
            a(i, j) = (sub & ~sup) == 0 ? 1 : 0;
        }
    }
    return a;
}

Eigen::MatrixXi SubsetIndexer::pattern_matrix() const {
    Eigen::MatrixXi a(k_, size());
    for (int j = 0; j < size(); ++j)
        for (int i = 0; i < k_; ++i)
            a(i, j) = (masks_[static_cast<std::size_t>(j)] >> i) & 1u;
    return a;
}

GMatrix build_g(const SubsetIndexer& idx, int s, int m) {
    if (m < 0 || m > idx.node_count())
        throw SizeLimit("build_g: order out of range");
    if (s != 0 && s != 1)
        throw std::invalid_argument("build_g: hypothesis label must be 0 or 1");
    const int n_cols = idx.size();
    const int n_rows = idx.prefix_size(m);
    GMatrix g;
    g.s = s;
    g.m = m;
    g.k = idx.node_count();
    g.dense.resize(n_rows, n_cols);
    for (int r = 0; r < n_rows; ++r) {
        const std::uint32_t sub = idx.mask(r);
        for (int j = 0; j < n_cols; ++j) {
            // Under s=1 the row event is "all of sub report 1": patterns
            // containing sub. Under s=0 it is "all of sub report 0":
            // patterns disjoint from sub. The latter equals the former
            // with columns reversed, as the order is self-complementary.
            const std::uint32_t sup = idx.mask(s == 1 ? j : n_cols - 1 - j);
            g.dense(r, j) = (sub & ~sup) == 0 ? 1 : 0;
        }
    }
    return g;
}

Eigen::MatrixXi GMatrix::square_block() const {
    const int n = dense.rows();
    return s == 1 ? dense.leftCols(n) : dense.rightCols(n);
}

Eigen::MatrixXi GMatrix::rect_block() const {
    const int n = dense.rows();
    const int rest = dense.cols() - n;
    return s == 1 ? dense.rightCols(rest) : dense.leftCols(rest);
}

Eigen::MatrixXi invert_square_block(const SubsetIndexer& idx, const GMatrix& g) {
    const int n = idx.prefix_size(g.m);
    Eigen::MatrixXi inv = Eigen::MatrixXi::Zero(n, n);
    for (int bn = 0; bn <= g.m; ++bn) {
        for (int bm = bn; bm <= g.m; ++bm) {
            const int sign = ((bn + bm) % 2 == 0) ? 1 : -1;
            inv.block(idx.block_offset(bn), idx.block_offset(bm), idx.block_size(bn),
                      idx.block_size(bm)) = sign * idx.incidence(bn, bm);
        }
    }
    if (g.s == 1)
        return inv;
    // The trailing square block under s=0 is the column-reversed leading
    // block, so its inverse is the row-reversed inverse.
    return inv.colwise().reverse().eval();
}

MarginalSet joint_to_marginals(const SubsetIndexer& idx, const JointPmf& p, int m) {
    const GMatrix g = build_g(idx, p.s, m);
    MarginalSet q;
    q.s = p.s;
    q.m = m;
    q.k = p.k;
    q.values = g.dense.cast<double>() * p.values;
    return q;
}

JointPmf complete_joint(const SubsetIndexer& idx, const MarginalSet& q, double tail_mass) {
    const int k = idx.node_count();
    if (q.m != k - 1)
        throw std::invalid_argument("complete_joint: marginal stack must have order k-1");
    if (q.values.size() != idx.prefix_size(k - 1))
        throw std::invalid_argument("complete_joint: marginal stack size mismatch");

    const GMatrix g = build_g(idx, q.s, k - 1);
    const Eigen::MatrixXd inv = invert_square_block(idx, g).cast<double>();
    const int n = idx.size();
    const int sq = n - 1; // prefix size at order k-1

    Eigen::VectorXd base = Eigen::VectorXd::Zero(n);
    if (q.s == 1)
        base.head(sq) = inv * q.values;
    else
        base.tail(sq) = inv * q.values;

    // Alternating-sign completion direction: +1 on cardinality blocks with
    // the parity of k, -1 on the others; global sign flips with s.
    Eigen::VectorXd dir(n);
    for (int m = 0; m <= k; ++m) {
        const double sign = ((k - m) % 2 == 0) ? 1.0 : -1.0;
        dir.segment(idx.block_offset(m), idx.block_size(m)).setConstant(sign);
    }
    if (q.s == 0 && k % 2 != 0)
        dir = -dir;

    JointPmf p;
    p.s = q.s;
    p.k = k;
    p.values = base + tail_mass * dir;

    constexpr double clamp_tol = 1e-12;
    for (int i = 0; i < n; ++i) {
        double& v = p.values(i);
        if (v < 0.0) {
            if (v < -clamp_tol)
                throw InvalidPmf("complete_joint: reconstructed entry below 0");
            v = 0.0;
        } else if (v > 1.0) {
            if (v > 1.0 + clamp_tol)
                throw InvalidPmf("complete_joint: reconstructed entry above 1");
            v = 1.0;
        }
    }
    if (std::fabs(p.values.sum() - 1.0) > 1e-9)
        throw InvalidPmf("complete_joint: reconstructed entries do not sum to 1");
    return p;
}

JointPmf product_pmf(const SubsetIndexer& idx, int s, const std::vector<double>& beta_or_gamma) {
    const int k = idx.node_count();
    if (static_cast<int>(beta_or_gamma.size()) != k)
        throw std::invalid_argument("product_pmf: need one probability per node");
    JointPmf p;
    p.s = s;
    p.k = k;
    p.values.resize(idx.size());
    for (int j = 0; j < idx.size(); ++j) {
        const std::uint32_t mask = idx.mask(j);
        double prob = 1.0;
        for (int i = 0; i < k; ++i) {
            const bool reports_one = (mask >> i) & 1u;
            const double p_match = beta_or_gamma[static_cast<std::size_t>(i)];
            // p_match is the probability of reporting s.
            const bool matches = (s == 1) == reports_one;
            prob *= matches ? p_match : 1.0 - p_match;
        }
        p.values(j) = prob;
    }
    return p;
}

bool is_valid_pmf(const Eigen::VectorXd& v, double tol) {
    if (v.size() == 0)
        return false;
    for (int i = 0; i < v.size(); ++i)
        if (!(v(i) >= -tol && v(i) <= 1.0 + tol))
            return false;
    return std::fabs(v.sum() - 1.0) <= tol;
}

} // namespace crn
