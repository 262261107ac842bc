#include "eikfem/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace eikfem {

SparseSpdMatrix SparseSpdMatrix::from_triplets(int n, std::vector<Triplet> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseSpdMatrix m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);
    m.col.reserve(triplets.size());
    m.val.reserve(triplets.size());

    for (std::size_t i = 0; i < triplets.size();) {
        const int r = triplets[i].row;
        const int c = triplets[i].col;
        double sum = 0.0;
        for (; i < triplets.size() && triplets[i].row == r && triplets[i].col == c; ++i)
            sum += triplets[i].value;
        m.col.push_back(c);
        m.val.push_back(sum);
        ++m.row_ptr[r + 1];
    }
    for (int r = 0; r < n; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
    return m;
}

void SparseSpdMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += val[k] * x[col[k]];
        y[r] = s;
    }
}

std::vector<double> SparseSpdMatrix::diagonal() const {
    std::vector<double> d(n, 0.0);
    for (int r = 0; r < n; ++r)
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
            if (col[k] == r) d[r] = val[k];
    return d;
}

double SparseSpdMatrix::entry(int i, int j) const {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (col[k] == j) return val[k];
    return 0.0;
}

double max_asymmetry(const SparseSpdMatrix& a) {
    double worst = 0.0;
    for (int r = 0; r < a.n; ++r)
        for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k)
            worst = std::max(worst, std::abs(a.val[k] - a.entry(a.col[k], r)));
    return worst;
}

} // namespace eikfem
