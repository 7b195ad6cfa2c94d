#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace hqst::topology {

// Hard limit for structural queries (labels, neighbor iteration, subcubes).
inline constexpr int kMaxDimension = 20;
// Dense adjacency materialization is capped separately: a 2^d x 2^d matrix
// of doubles at d = 13 already weighs half a gigabyte.
inline constexpr int kMaxDenseDimension = 12;

/// Vertex of a d-dimensional hypercube, identified by its d-bit label
/// x = x_1 x_2 ... x_d.  Bit index 1 is the most significant position.
class NodeLabel {
public:
    NodeLabel(int dimension, std::uint32_t value);

    int dimension() const { return d_; }
    std::uint32_t value() const { return value_; }

    /// Bit x_j for j in [1, d]; j = 1 is the most significant bit.
    int bit(int j) const;

    /// Label with bit j flipped.
    NodeLabel flipped(int j) const;

    /// Number of 1-bits; equals the Hamming distance from 00...0.
    int hamming_row() const;

    /// All d labels differing from this one in exactly one bit.
    std::vector<NodeLabel> neighbors() const;

    /// Bit-string rendering, e.g. "010".
    std::string to_string() const;

    friend bool operator==(const NodeLabel& a, const NodeLabel& b) {
        return a.d_ == b.d_ && a.value_ == b.value_;
    }

private:
    int d_;
    std::uint32_t value_;
};

int hamming_row(const NodeLabel& label);
int hamming_distance(const NodeLabel& a, const NodeLabel& b);

/// Number of edges of the d-dimensional hypercube, d * 2^(d-1).
std::int64_t edge_count(int d);

/// Dense adjacency matrix of the d-dimensional hypercube: entry (x, y) is 1
/// iff the labels differ in exactly one bit.  Requires d <= kMaxDenseDimension.
Eigen::MatrixXd adjacency_matrix(int d);

/// Single tensor factor of the adjacency decomposition: the permutation
/// matrix that flips bit j (j = 1 is the most significant bit).  The sum of
/// all d factors is adjacency_matrix(d).
Eigen::MatrixXd bit_flip_matrix(int d, int j);

/// Sparse adjacency in row-major form, usable beyond the dense cap.
Eigen::SparseMatrix<double, Eigen::RowMajor> adjacency_sparse(int d);

/// Minimal subcube of the hypercube containing two corners a and b.  The
/// free bits are the positions where a and b differ; the member nodes agree
/// with a everywhere else.
class Subcube {
public:
    Subcube(const NodeLabel& a, const NodeLabel& b);

    const NodeLabel& corner_a() const { return a_; }
    const NodeLabel& corner_b() const { return b_; }

    /// Dimension of the induced subcube (= Hamming distance between corners).
    int dimension() const { return free_bit_positions_.size(); }

    /// Positions (1-based, MSB-first) where the corners differ.
    const std::vector<int>& free_bits() const { return free_bit_positions_; }

    /// All 2^dimension member labels, ascending by value.
    std::vector<NodeLabel> nodes() const;

    bool contains(const NodeLabel& x) const;

    /// Hamming distance from corner a, counting only free bits.  For members
    /// this is the row index within the subcube.
    int row_within(const NodeLabel& x) const;

private:
    NodeLabel a_;
    NodeLabel b_;
    std::uint32_t free_mask_;
    std::vector<int> free_bit_positions_;
};

Subcube subcube_between(const NodeLabel& a, const NodeLabel& b);

/// Writes the adjacency matrix as row-major 0/1 CSV rows (no header).
std::string adjacency_csv(int d);

}  // namespace hqst::topology
