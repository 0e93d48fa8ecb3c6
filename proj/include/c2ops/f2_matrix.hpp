#pragma once

// Dense bit-packed F2 matrices, just enough for rank computations on the
// small blocks the cobar windows produce.

#include <bit>
#include <cstdint>
#include <vector>

namespace c2ops {

struct F2Matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<std::vector<uint64_t>> data;  // row-major bitsets

    F2Matrix(size_t r, size_t c) : rows(r), cols(c), data(r, std::vector<uint64_t>((c + 63) / 64, 0))
    {
    }

    void set(size_t r, size_t c) { data[r][c >> 6] ^= (uint64_t(1) << (c & 63)); }
    bool get(size_t r, size_t c) const { return (data[r][c >> 6] >> (c & 63)) & 1; }
};

inline size_t rank(F2Matrix m)
{
    auto first_set = [](const std::vector<uint64_t>& row) -> size_t {
        for (size_t w = 0; w < row.size(); ++w)
            if (row[w])
                return (w << 6) + (size_t)std::countr_zero(row[w]);
        return ~size_t(0);
    };
    std::vector<size_t> pivot_row(m.cols, ~size_t(0));
    size_t r = 0;
    for (size_t i = 0; i < m.rows; ++i) {
        auto& R = m.data[i];
        for (;;) {
            size_t lead = first_set(R);
            if (lead == ~size_t(0))
                break;
            if (pivot_row[lead] == ~size_t(0)) {
                pivot_row[lead] = i;
                ++r;
                break;
            }
            const auto& P = m.data[pivot_row[lead]];
            for (size_t w = lead >> 6; w < R.size(); ++w)
                R[w] ^= P[w];
        }
    }
    return r;
}

}  // namespace c2ops
