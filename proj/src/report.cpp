#include "slicelab/report.hpp"

namespace slicelab {

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const Sl2Triple& t) {
  return Json{{"xi", to_json(t.xi)}, {"h", to_json(t.h)}, {"eta", to_json(t.eta)}};
}

Json to_json(const SlodowySlice& s) {
  Json kernel = Json::array();
  for (const Mat& b : s.kernel_basis()) kernel.push_back(to_json(b));
  return Json{{"n", s.spec().n},
              {"triple", to_json(s.triple())},
              {"kernel_basis", kernel},
              {"membership_tol", s.tolerances().membership}};
}

Json to_json(const ModelPoint& p) {
  return Json{{"group", to_json(p.g)}, {"coords", to_json(p.coords)}};
}

Json to_json(const ConjugationWitness& w) {
  return Json{{"p", to_json(w.p)},
              {"source", to_json(w.source)},
              {"target", to_json(w.target)},
              {"residual", w.residual}};
}

Mat mat_from_json(const Json& j) {
  const auto rows = j.size();
  const auto cols = j.at(0).size();
  Mat m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k) {
      const Json& cell = j.at(i).at(k);
      m(i, k) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  return m;
}

}  // namespace slicelab
