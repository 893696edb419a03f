#pragma once
#include <string>
#include <utility>
#include <vector>

#include "dsii/grid.hpp"

// Binary field format: 16-byte magic "DSII-FIELD-V1\0\0\0", then little-endian
// u32 version (=1), u32 nx, u32 ny, f64 lx, f64 ly, f64 t, followed by nx*ny
// complex values as interleaved f64 (re, im), row-major, x leading.
namespace dsii::io {

struct LoadedField {
  Grid grid;
  double t = 0;
  cvec f;
};

void write_field(const std::string& path, const Grid& g, double t, const cvec& f);
LoadedField read_field(const std::string& path);

void write_norms_csv(const std::string& path,
                     const std::vector<std::pair<double, double>>& rows);

// generic CSV: header row then data rows
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace dsii::io
