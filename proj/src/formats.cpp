#include "ortho/formats.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "num_format.hpp"

namespace ortho {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& t) {
  if (t == "inf") return kInf;
  const char* c = t.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (t.empty() || end != c + t.size())
    throw std::invalid_argument("not a number: '" + t + "'");
  return v;
}

int parse_dim(const std::string& t) {
  double v = parse_double(t);
  int i = static_cast<int>(v);
  if (static_cast<double>(i) != v || i < 1)
    throw std::invalid_argument("not a positive integer: '" + t + "'");
  return i;
}

}  // namespace

NormedSpace parse_space(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "euclidean")
    return NormedSpace::euclidean(parse_dim(parts[1]));
  if (parts.size() == 3 && parts[0] == "lp")
    return NormedSpace::lp(parse_double(parts[1]), parse_dim(parts[2]));
  if (parts.size() == 3 && parts[0] == "poly") {
    const std::string& body = parts[2];
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
      throw std::invalid_argument("poly descriptor needs bracketed rows: '" + text + "'");
    std::vector<Vector> fs;
    for (const std::string& row : split(body.substr(1, body.size() - 2), ';'))
      fs.push_back(parse_vector(row));
    return NormedSpace::polyhedral(parse_dim(parts[1]), fs);
  }
  throw std::invalid_argument("unrecognized space descriptor: '" + text + "'");
}

Vector parse_vector(const std::string& text) {
  std::vector<double> coords;
  for (const std::string& part : split(text, ',')) coords.push_back(parse_double(part));
  return Vector(std::move(coords));
}

MatrixText parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  for (const std::string& row : split(text, ';')) {
    std::vector<double> r;
    for (const std::string& part : split(row, ',')) r.push_back(parse_double(part));
    if (!rows.empty() && r.size() != rows.front().size())
      throw std::invalid_argument("matrix rows must have equal length: '" + text + "'");
    rows.push_back(std::move(r));
  }
  MatrixText m;
  m.rows = static_cast<int>(rows.size());
  m.cols = static_cast<int>(rows.front().size());
  if (m.cols == 0) throw std::invalid_argument("matrix rows must be nonempty: '" + text + "'");
  m.column_major.resize(static_cast<std::size_t>(m.rows) * static_cast<std::size_t>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      m.column_major[static_cast<std::size_t>(i + j * m.rows)] =
          rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

OrthoRelation parse_relation(const std::string& text) {
  if (text == "birkhoff") return OrthoRelation::birkhoff();
  if (text == "isosceles") return OrthoRelation::isosceles();
  if (text == "unit-isosceles") return OrthoRelation::unit_isosceles();
  if (text == "roberts") return OrthoRelation::roberts();
  auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "dragomir")
    return OrthoRelation::dragomir(parse_double(parts[1]));
  if (parts.size() == 2 && parts[0] == "chmielinski")
    return OrthoRelation::chmielinski(parse_double(parts[1]));
  throw std::invalid_argument("unrecognized relation: '" + text + "'");
}

std::string format_vector(const Vector& v) {
  std::string out;
  for (int i = 0; i < v.dim(); ++i) {
    if (i) out += ',';
    out += detail::format_number(v[i]);
  }
  return out;
}

std::string format_matrix(int rows, int cols, const std::vector<double>& column_major) {
  std::string out;
  for (int i = 0; i < rows; ++i) {
    if (i) out += ';';
    for (int j = 0; j < cols; ++j) {
      if (j) out += ',';
      out += detail::format_number(column_major[static_cast<std::size_t>(i + j * rows)]);
    }
  }
  return out;
}

}  // namespace ortho
