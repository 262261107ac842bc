#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eikfem/driver.hpp"
#include "eikfem/mesh.hpp"
#include "eikfem/sparse.hpp"

namespace eikfem {

struct NamedPointData {
    std::string name;
    const std::vector<double>* values = nullptr; // one per mesh vertex
};

/// Legacy ASCII VTK UNSTRUCTURED_GRID with type-5 triangle cells.
void write_vtk(std::ostream& out, const Mesh& mesh,
               const std::vector<NamedPointData>& point_data = {});

/// MatrixMarket coordinate format, general symmetry kept explicit.
void write_matrix_market(std::ostream& out, const SparseSpdMatrix& matrix);

/// Cross-section CSV, header "t,u", 12 significant digits.
void write_cross_section_csv(std::ostream& out,
                             const std::vector<CrossSectionSample>& samples);

/// Shortest 12-significant-digit decimal rendering used by all emitters.
std::string format_sig12(double value);

} // namespace eikfem
