#pragma once

#include "iht/matrix.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace iht {

/// Ordered set of observed index pairs. Pairs are 0-based and kept row-major
/// sorted; the row-major position of a pair is the canonical column index of
/// the implicit selection matrix S_Omega, while vectorization itself is
/// column-stacking (entry (i,j) sits at position j*n1 + i of vect(X)).
class SamplingSet {
public:
    using Pair = std::pair<std::uint32_t, std::uint32_t>;

    SamplingSet(std::size_t n1, std::size_t n2, std::vector<Pair> pairs);

    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }
    std::size_t count() const { return pairs_.size(); }
    const std::vector<Pair>& pairs() const { return pairs_; }

    bool contains(std::uint32_t i, std::uint32_t j) const;

    /// Dense 0/1 membership mask, row-major.
    std::vector<bool> mask() const;

private:
    std::size_t n1_, n2_;
    std::vector<Pair> pairs_;  // row-major sorted, unique
};

/// s distinct pairs uniform over all s-subsets of the grid, by a seeded
/// Fisher-Yates shuffle of the flattened index range.
SamplingSet uniform_sample(std::size_t n1, std::size_t n2, std::size_t s, std::uint64_t seed);

/// k distinct row indices out of n, same shuffle discipline, sorted.
std::vector<std::size_t> sample_rows(std::size_t n, std::size_t k, std::uint64_t seed);

/// Copy the entries in Omega, zero the rest.
DenseMatrix project_omega(const DenseMatrix& a, const SamplingSet& omega);

/// Zero the entries in Omega, copy the rest.
DenseMatrix project_omega_complement(const DenseMatrix& a, const SamplingSet& omega);

/// The complement sampling set, row-major ordered.
SamplingSet complement(const SamplingSet& omega);

/// True iff s is at least the degrees of freedom (n1+n2-r)*r of a rank-r
/// matrix.
bool dof_satisfied(std::size_t n1, std::size_t n2, std::size_t r, std::size_t s);

/// Incoherence mu = (n/r) * max row squared norm of an orthonormal n x r
/// factor. Throws if the columns are not orthonormal within 1e-8.
double incoherence(const DenseMatrix& q);

}  // namespace iht
