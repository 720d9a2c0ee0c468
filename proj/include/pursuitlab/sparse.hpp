#pragma once

#include <algorithm>
#include <vector>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/matrix.hpp"

namespace pursuitlab {

// K-sparse vector: strictly increasing 0-based support, nonzero values.
struct SparseVector {
    int dim = 0;
    std::vector<int> support;
    std::vector<double> values;

    SparseVector() = default;

    SparseVector(int dim_, std::vector<int> support_, std::vector<double> values_)
        : dim(dim_), support(std::move(support_)), values(std::move(values_)) {
        if (support.size() != values.size())
            throw DimensionMismatch("sparse vector: support/value length mismatch");
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (support[i] < 0 || support[i] >= dim)
                throw DimensionMismatch("sparse vector: support index out of range");
            if (i > 0 && support[i] <= support[i - 1])
                throw InvalidArgument("sparse vector: support must be strictly increasing");
            if (values[i] == 0.0)
                throw InvalidArgument("sparse vector: zero value on support");
        }
    }

    int sparsity() const { return int(support.size()); }

    Vector to_dense() const {
        Vector x(std::size_t(dim), 0.0);
        for (std::size_t i = 0; i < support.size(); ++i)
            x[std::size_t(support[i])] = values[i];
        return x;
    }
};

inline bool same_support(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
}

}
