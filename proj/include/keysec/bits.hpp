#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "keysec/errors.hpp"

namespace keysec {

// Keys and keystream values are bit strings of known length packed into a
// 64-bit word, bit t of the word being bit t of the string (t = 0 first).
inline int parity64(std::uint64_t v) {
    return std::popcount(v) & 1;
}

inline std::uint64_t bit_of(std::uint64_t v, int i) {
    return (v >> i) & 1u;
}

struct BitString {
    int length = 0;
    std::uint64_t value = 0;

    BitString() = default;
    BitString(int length_, std::uint64_t value_) : length(length_), value(value_) {
        if (length < 1 || length > 63)
            throw ValidationError("BitString length must be in [1, 63]");
        if (length < 64 && (value >> length) != 0)
            throw ValidationError("BitString value has bits above its length");
    }

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(length), '0');
        for (int i = 0; i < length; ++i)
            if (bit_of(value, i)) s[static_cast<std::size_t>(i)] = '1';
        return s; // bit 0 first
    }
};

// A subset of bit positions of an n-bit key, held sorted ascending.
// extract() gathers the selected bits into an m-bit value, preserving order.
struct SubsetMask {
    int n = 0;
    std::vector<int> positions;

    SubsetMask() = default;
    SubsetMask(int n_, std::vector<int> positions_) : n(n_), positions(std::move(positions_)) {
        if (n < 1 || n > 63) throw ValidationError("SubsetMask: n must be in [1, 63]");
        if (positions.empty()) throw ValidationError("SubsetMask: need at least one position");
        if (positions.size() > static_cast<std::size_t>(n))
            throw ValidationError("SubsetMask: more positions than bits");
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if (positions[i] < 0 || positions[i] >= n)
                throw ValidationError("SubsetMask: position out of range");
            if (i > 0 && positions[i] <= positions[i - 1])
                throw ValidationError("SubsetMask: positions must be strictly increasing");
        }
    }

    static SubsetMask first_bits(int n, int m) {
        std::vector<int> pos(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) pos[static_cast<std::size_t>(i)] = i;
        return SubsetMask(n, std::move(pos));
    }

    static SubsetMask all_bits(int n) { return first_bits(n, n); }

    int size() const { return static_cast<int>(positions.size()); }

    std::uint64_t extract(std::uint64_t key) const {
        std::uint64_t out = 0;
        for (std::size_t j = 0; j < positions.size(); ++j)
            out |= bit_of(key, positions[j]) << j;
        return out;
    }

    // Bitmask with ones at the selected positions.
    std::uint64_t as_word() const {
        std::uint64_t w = 0;
        for (int p : positions) w |= std::uint64_t{1} << p;
        return w;
    }
};

} // namespace keysec
