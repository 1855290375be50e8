#ifndef SLICELAB_REPORT_HPP
#define SLICELAB_REPORT_HPP

#include "slicelab/conjugation.hpp"
#include "slicelab/model.hpp"

#include <json.hpp>

// JSON serialization: matrices as row-major arrays of [re, im] pairs.
// ordered_json throughout so emitted reports are byte-deterministic.

namespace slicelab {

using Json = nlohmann::ordered_json;

Json to_json(const Complex& z);
Json to_json(const Mat& m);
Json to_json(const Vec& v);
Json to_json(const Eigen::VectorXd& v);
Json to_json(const Sl2Triple& t);
Json to_json(const SlodowySlice& s);
Json to_json(const ModelPoint& p);
Json to_json(const ConjugationWitness& w);

Mat mat_from_json(const Json& j);

}  // namespace slicelab

#endif
