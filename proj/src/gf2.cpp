#include "keysec/gf2.hpp"

#include "keysec/bits.hpp"
#include "keysec/errors.hpp"

namespace keysec {

int gf2_rank(std::vector<std::uint64_t> rows, int ncols) {
    int rank = 0;
    for (int col = 0; col < ncols; ++col) {
        const std::uint64_t bit = std::uint64_t{1} << col;
        std::size_t pivot = static_cast<std::size_t>(rank);
        while (pivot < rows.size() && !(rows[pivot] & bit)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != static_cast<std::size_t>(rank) && (rows[r] & bit))
                rows[r] ^= rows[static_cast<std::size_t>(rank)];
        ++rank;
    }
    return rank;
}

Gf2Solution gf2_solve(const std::vector<std::uint64_t>& rows,
                      const std::vector<int>& rhs, int ncols) {
    if (rows.size() != rhs.size())
        throw ValidationError("gf2_solve: row/rhs count mismatch");
    if (ncols < 1 || ncols > 63)
        throw ValidationError("gf2_solve: ncols must be in [1, 63]");

    // Augmented rows: coefficient bits 0..ncols-1, rhs at bit ncols.
    std::vector<std::uint64_t> aug(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (ncols < 64 && (rows[i] >> ncols) != 0)
            throw ValidationError("gf2_solve: row has bits above ncols");
        aug[i] = rows[i] | (static_cast<std::uint64_t>(rhs[i] & 1) << ncols);
    }

    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < ncols; ++col) {
        const std::uint64_t bit = std::uint64_t{1} << col;
        std::size_t pivot = static_cast<std::size_t>(rank);
        while (pivot < aug.size() && !(aug[pivot] & bit)) ++pivot;
        if (pivot == aug.size()) continue;
        std::swap(aug[static_cast<std::size_t>(rank)], aug[pivot]);
        for (std::size_t r = 0; r < aug.size(); ++r)
            if (r != static_cast<std::size_t>(rank) && (aug[r] & bit))
                aug[r] ^= aug[static_cast<std::size_t>(rank)];
        pivot_col.push_back(col);
        ++rank;
    }

    Gf2Solution sol;
    const std::uint64_t rhs_bit = std::uint64_t{1} << ncols;
    for (std::size_t r = static_cast<std::size_t>(rank); r < aug.size(); ++r)
        if (aug[r] & rhs_bit) return sol; // 0 = 1 row: inconsistent
    sol.consistent = true;

    std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
    for (int i = 0; i < rank; ++i) {
        is_pivot[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] = true;
        if (aug[static_cast<std::size_t>(i)] & rhs_bit)
            sol.particular |= std::uint64_t{1} << pivot_col[static_cast<std::size_t>(i)];
    }

    // One null-space vector per free column: free bit set, pivot bits copied
    // from that column of the reduced rows.
    for (int col = 0; col < ncols; ++col) {
        if (is_pivot[static_cast<std::size_t>(col)]) continue;
        std::uint64_t v = std::uint64_t{1} << col;
        for (int i = 0; i < rank; ++i)
            if (aug[static_cast<std::size_t>(i)] & (std::uint64_t{1} << col))
                v |= std::uint64_t{1} << pivot_col[static_cast<std::size_t>(i)];
        sol.null_basis.push_back(v);
    }
    return sol;
}

std::vector<std::uint64_t> gf2_enumerate(const Gf2Solution& sol) {
    if (!sol.consistent) return {};
    if (sol.null_basis.size() > 20)
        throw SizeGuardError("gf2_enumerate: solution space larger than 2^20");
    const std::size_t count = std::size_t{1} << sol.null_basis.size();
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        std::uint64_t v = sol.particular;
        for (std::size_t j = 0; j < sol.null_basis.size(); ++j)
            if ((c >> j) & 1) v ^= sol.null_basis[j];
        out.push_back(v);
    }
    return out;
}

} // namespace keysec
