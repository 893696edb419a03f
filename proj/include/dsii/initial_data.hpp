#pragma once
#include <string>

#include "dsii/grid.hpp"

namespace dsii::initial_data {

cvec gaussian(const Grid& g);             // e^{-(x^2+y^2)}
cvec asymmetric_gaussian(const Grid& g);  // e^{-(x^2+xy+2y^2)}
cvec from_file(const std::string& path, const Grid& g);  // binary field format

}  // namespace dsii::initial_data
