#pragma once

#include <vector>

namespace eikfem {

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/// Symmetric positive definite matrix in CSR form.  Duplicate triplets are
/// summed on construction.
struct SparseSpdMatrix {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    static SparseSpdMatrix from_triplets(int n, std::vector<Triplet> triplets);

    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
    std::vector<double> diagonal() const;
    double entry(int i, int j) const; // 0 when not stored
};

/// max |A - A^T| over stored entries, for symmetry checks.
double max_asymmetry(const SparseSpdMatrix& a);

} // namespace eikfem
