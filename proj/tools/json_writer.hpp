#ifndef RESYM_TOOLS_JSON_WRITER_HPP
#define RESYM_TOOLS_JSON_WRITER_HPP

#include <Eigen/Dense>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace resym::cli {

// Minimal JSON emitter with pinned float formatting (17 significant digits)
// so identical inputs give byte-identical outputs.

inline std::string json_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_int_array(std::ostream& out, const std::vector<int>& v) {
  out << "[";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << "]";
}

inline void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  out << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out << (i ? "," : "") << json_double(v(i));
  out << "]";
}

inline void write_matrix_rows(std::ostream& out, const Eigen::MatrixXd& m) {
  out << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out << ",";
    out << "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << (j ? "," : "") << json_double(m(i, j));
    out << "]";
  }
  out << "]";
}

/// The stable matrix schema: {"n": int, "labels": [...], "matrix": [[...]]}.
inline void write_labeled_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  out << "{\"n\":" << n << ",\"labels\":[";
  for (int i = 0; i < n; ++i) out << (i ? "," : "") << i;
  out << "],\"matrix\":";
  write_matrix_rows(out, m);
  out << "}\n";
}

}  // namespace resym::cli

#endif
