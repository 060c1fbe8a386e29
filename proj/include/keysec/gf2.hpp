#pragma once

#include <cstdint>
#include <vector>

namespace keysec {

// Linear algebra over GF(2) with rows packed into 64-bit words
// (column j of a row is bit j; at most 63 columns).

int gf2_rank(std::vector<std::uint64_t> rows, int ncols);

// Solution set of A x = b described by one particular solution and a basis
// of the null space; empty set when inconsistent.
struct Gf2Solution {
    bool consistent = false;
    std::uint64_t particular = 0;
    std::vector<std::uint64_t> null_basis;

    int dimension() const { return static_cast<int>(null_basis.size()); }
    std::size_t count() const {
        return consistent ? (std::size_t{1} << null_basis.size()) : 0;
    }
};

Gf2Solution gf2_solve(const std::vector<std::uint64_t>& rows,
                      const std::vector<int>& rhs, int ncols);

// All solutions, particular + span of the null basis; caller must keep the
// solution space small (throws SizeGuardError above 2^20 solutions).
std::vector<std::uint64_t> gf2_enumerate(const Gf2Solution& sol);

} // namespace keysec
