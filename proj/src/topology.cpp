#include "hqst/topology.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace hqst::topology {

namespace {

void check_dimension(int d, int cap) {
    if (d < 1 || d > cap) {
        throw std::invalid_argument("hypercube dimension " + std::to_string(d) +
                                    " out of range [1, " + std::to_string(cap) + "]");
    }
}

// Bit j (1-based, MSB-first) corresponds to the machine bit at position d - j.
std::uint32_t machine_mask(int d, int j) {
    return std::uint32_t{1} << (d - j);
}

}  // namespace

NodeLabel::NodeLabel(int dimension, std::uint32_t value) : d_(dimension), value_(value) {
    check_dimension(dimension, kMaxDimension);
    if (value >= (std::uint32_t{1} << dimension)) {
        throw std::invalid_argument("node label " + std::to_string(value) +
                                    " does not fit in " + std::to_string(dimension) + " bits");
    }
}

int NodeLabel::bit(int j) const {
    if (j < 1 || j > d_) {
        throw std::out_of_range("bit index " + std::to_string(j) + " out of range [1, " +
                                std::to_string(d_) + "]");
    }
    return (value_ & machine_mask(d_, j)) ? 1 : 0;
}

NodeLabel NodeLabel::flipped(int j) const {
    if (j < 1 || j > d_) {
        throw std::out_of_range("bit index " + std::to_string(j) + " out of range [1, " +
                                std::to_string(d_) + "]");
    }
    return NodeLabel(d_, value_ ^ machine_mask(d_, j));
}

int NodeLabel::hamming_row() const { return std::popcount(value_); }

std::vector<NodeLabel> NodeLabel::neighbors() const {
    std::vector<NodeLabel> out;
    out.reserve(d_);
    for (int j = 1; j <= d_; ++j) out.push_back(flipped(j));
    return out;
}

std::string NodeLabel::to_string() const {
    std::string s(d_, '0');
    for (int j = 1; j <= d_; ++j) s[j - 1] = bit(j) ? '1' : '0';
    return s;
}

int hamming_row(const NodeLabel& label) { return label.hamming_row(); }

int hamming_distance(const NodeLabel& a, const NodeLabel& b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("hamming_distance: labels of different dimension");
    }
    return std::popcount(a.value() ^ b.value());
}

std::int64_t edge_count(int d) {
    check_dimension(d, kMaxDimension);
    return static_cast<std::int64_t>(d) << (d - 1);
}

Eigen::MatrixXd adjacency_matrix(int d) {
    check_dimension(d, kMaxDenseDimension);
    const int n = 1 << d;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        for (int j = 0; j < d; ++j) a(x, x ^ (1 << j)) = 1.0;
    }
    return a;
}

Eigen::MatrixXd bit_flip_matrix(int d, int j) {
    check_dimension(d, kMaxDenseDimension);
    if (j < 1 || j > d) {
        throw std::out_of_range("tensor factor index " + std::to_string(j) +
                                " out of range [1, " + std::to_string(d) + "]");
    }
    const int n = 1 << d;
    const std::uint32_t mask = machine_mask(d, j);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(n); ++x) t(x, x ^ mask) = 1.0;
    return t;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> adjacency_sparse(int d) {
    check_dimension(d, kMaxDimension);
    const std::int64_t n = std::int64_t{1} << d;
    Eigen::SparseMatrix<double, Eigen::RowMajor> a(n, n);
    a.reserve(Eigen::VectorXi::Constant(n, d));
    for (std::int64_t x = 0; x < n; ++x) {
        for (int j = 0; j < d; ++j) a.insert(x, x ^ (std::int64_t{1} << j)) = 1.0;
    }
    a.makeCompressed();
    return a;
}

Subcube::Subcube(const NodeLabel& a, const NodeLabel& b) : a_(a), b_(b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("subcube corners have different dimensions");
    }
    free_mask_ = a.value() ^ b.value();
    for (int j = 1; j <= a.dimension(); ++j) {
        if (free_mask_ & machine_mask(a.dimension(), j)) free_bit_positions_.push_back(j);
    }
}

std::vector<NodeLabel> Subcube::nodes() const {
    const int m = dimension();
    std::vector<NodeLabel> out;
    out.reserve(std::size_t{1} << m);
    const std::uint32_t base = a_.value() & ~free_mask_;
    // Enumerate subsets of the free mask in ascending label order.
    std::uint32_t subset = 0;
    while (true) {
        out.push_back(NodeLabel(a_.dimension(), base | subset));
        if (subset == free_mask_) break;
        subset = (subset - free_mask_) & free_mask_;
    }
    return out;
}

bool Subcube::contains(const NodeLabel& x) const {
    if (x.dimension() != a_.dimension()) return false;
    return ((x.value() ^ a_.value()) & ~free_mask_) == 0;
}

int Subcube::row_within(const NodeLabel& x) const {
    if (!contains(x)) throw std::invalid_argument("node is not a member of the subcube");
    return std::popcount((x.value() ^ a_.value()) & free_mask_);
}

Subcube subcube_between(const NodeLabel& a, const NodeLabel& b) { return Subcube(a, b); }

std::string adjacency_csv(int d) {
    const Eigen::MatrixXd a = adjacency_matrix(d);
    std::ostringstream os;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (j) os << ',';
            os << static_cast<int>(a(i, j));
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace hqst::topology
