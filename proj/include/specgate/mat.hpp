#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace specgate {

// Dense row-major matrix. Frames are rows throughout the library.
template <typename T>
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<T> v;

    Mat() = default;
    Mat(int r, int c, T fill = T{}) : rows(r), cols(c), v(static_cast<size_t>(r) * c, fill) {
        if (r < 0 || c < 0) throw std::invalid_argument("Mat: negative dimension");
    }

    T& operator()(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
    const T& operator()(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }

    T* row(int r) { return v.data() + static_cast<size_t>(r) * cols; }
    const T* row(int r) const { return v.data() + static_cast<size_t>(r) * cols; }

    size_t size() const { return v.size(); }
    bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

using MatF = Mat<float>;
using MatD = Mat<double>;

}  // namespace specgate
