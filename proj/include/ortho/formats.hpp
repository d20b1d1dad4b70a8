#pragma once

#include <string>
#include <vector>

#include "ortho/normed_space.hpp"
#include "ortho/orthogonality.hpp"
#include "ortho/vector.hpp"

namespace ortho {

// Text forms accepted on the command line and in config files:
//   spaces     lp:<p>:<dim> | euclidean:<dim> | poly:<dim>:[a,b;c,d;...]
//   vectors    0.75,-0.25
//   matrices   1,2;0,1                  (rows separated by ';')
//   relations  birkhoff | isosceles | unit-isosceles | roberts
//              | dragomir:<eps> | chmielinski:<eps>
// Malformed text raises std::invalid_argument (a usage error at the CLI).

struct MatrixText {
  int rows = 0;
  int cols = 0;
  std::vector<double> column_major;
};

NormedSpace parse_space(const std::string& text);
Vector parse_vector(const std::string& text);
MatrixText parse_matrix(const std::string& text);
OrthoRelation parse_relation(const std::string& text);

std::string format_vector(const Vector& v);
std::string format_matrix(int rows, int cols, const std::vector<double>& column_major);

}  // namespace ortho
