#include "eikfem/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace eikfem {

std::string format_sig12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void write_vtk(std::ostream& out, const Mesh& mesh,
               const std::vector<NamedPointData>& point_data) {
    out << "# vtk DataFile Version 3.0\n";
    out << "eikfem solution\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.vertices.size() << " double\n";
    for (const Vec2& v : mesh.vertices)
        out << format_sig12(v.x) << " " << format_sig12(v.y) << " 0\n";

    const std::size_t nt = mesh.triangles.size();
    out << "CELLS " << nt << " " << 4 * nt << "\n";
    for (const auto& t : mesh.triangles)
        out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    out << "CELL_TYPES " << nt << "\n";
    for (std::size_t i = 0; i < nt; ++i) out << "5\n";

    if (!point_data.empty()) {
        out << "POINT_DATA " << mesh.vertices.size() << "\n";
        for (const auto& field : point_data) {
            out << "SCALARS " << field.name << " double 1\n";
            out << "LOOKUP_TABLE default\n";
            for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
                out << format_sig12((*field.values)[i]) << "\n";
        }
    }
}

void write_matrix_market(std::ostream& out, const SparseSpdMatrix& matrix) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    std::size_t nnz = matrix.val.size();
    out << matrix.n << " " << matrix.n << " " << nnz << "\n";
    for (int r = 0; r < matrix.n; ++r)
        for (int k = matrix.row_ptr[r]; k < matrix.row_ptr[r + 1]; ++k)
            out << r + 1 << " " << matrix.col[k] + 1 << " "
                << format_sig12(matrix.val[k]) << "\n";
}

void write_cross_section_csv(std::ostream& out,
                             const std::vector<CrossSectionSample>& samples) {
    out << "t,u\n";
    for (const auto& s : samples)
        out << format_sig12(s.t) << ","
            << (std::isfinite(s.u) ? format_sig12(s.u) : std::string("nan")) << "\n";
}

} // namespace eikfem
