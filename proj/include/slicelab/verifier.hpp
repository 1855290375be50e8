#ifndef SLICELAB_VERIFIER_HPP
#define SLICELAB_VERIFIER_HPP

#include "slicelab/model.hpp"
#include "slicelab/report.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

// The presented-space contract and the condition checks: freeness, dimension
// count, moment image, fibre structure, submersion of the slice-valued map,
// the integrable-system rank criterion, and the classify-and-trivialize
// driver.

namespace slicelab {

// Opaque point of a presented space: a group factor plus a scenario-specific
// coordinate block (slice coordinates, algebra coordinates, ...).
struct SpacePoint {
  Mat g;
  Vec extra;
};

// Capability record for a Hamiltonian G-space under test.  All members are
// pure functions; optional capabilities may be left empty.
struct PresentedSpace {
  std::string name;
  GroupSpec spec{2};
  int dimension = 0;        // declared complex dimension
  std::string affine_note;  // condition (i) is declared, never computed
  int tangent_dim = 0;      // chart directions; must equal dimension

  std::function<std::vector<SpacePoint>(std::uint64_t seed, int count)> sample;
  std::function<Mat(const SpacePoint&)> moment;
  std::function<SpacePoint(const Mat& g, const SpacePoint&)> act;
  // Point moved along chart direction k by complex parameter t.
  std::function<SpacePoint(const SpacePoint&, int k, Complex t)> perturb;
  // Ambient embedding, used for distances and finite differences.
  std::function<Vec(const SpacePoint&)> embed;
  // omega on tangent vectors given by chart coefficients.
  std::function<Complex(const SpacePoint&, const Vec&, const Vec&)> symplectic;
  // Optional: point with the given slice-valued-map label.  Returns nullopt
  // when the label is outside the space's reach (partial sections).
  std::function<std::optional<SpacePoint>(const Mat& label)> fibre_section;
  // Optional: group element carrying the first point to the second.
  std::function<std::optional<Mat>(const SpacePoint&, const SpacePoint&)>
      transporter;
};

struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TrivializeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckResult {
  std::string name;
  std::string verdict;
  std::string summary;
  Json evidence = Json::object();
};

struct ConditionReport {
  std::string scenario;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  const CheckResult* find(const std::string& name) const;
  Json to_json() const;
};

// name -> expected verdict, in report order
using ExpectedPattern = std::vector<std::pair<std::string, std::string>>;

bool pattern_matches(const ConditionReport& report,
                     const ExpectedPattern& expected,
                     std::vector<std::string>* mismatches = nullptr);

struct VerifierConfig {
  int samples = 100;
  std::uint64_t seed = 1;
  int fibre_samples = 10;
  int surjectivity_probes = 50;
  int contract_triples = 5;
  int jacobian_samples = 20;
};

class Verifier {
 public:
  explicit Verifier(std::shared_ptr<const SlodowySlice> slice);

  const SlodowySlice& slice() const { return *slice_; }
  const ModelSpace& model() const { return model_; }

  // PresentedSpace invariants (action law, moment equivariance); throws
  // ContractError on violation.
  void enforce_contract(const PresentedSpace& space,
                        const std::vector<SpacePoint>& samples,
                        std::uint64_t seed) const;

  CheckResult check_free_action(const PresentedSpace& space,
                                const std::vector<SpacePoint>& samples) const;
  CheckResult check_dimension(const PresentedSpace& space) const;
  // containment part (iv-a) and surjectivity part (iv-b)
  std::pair<CheckResult, CheckResult> check_image_regular(
      const PresentedSpace& space, const std::vector<SpacePoint>& samples,
      int probes, std::uint64_t seed) const;
  CheckResult check_fibre_single_orbit(
      const PresentedSpace& space, const Mat& label,
      const std::vector<SpacePoint>& fibre_samples) const;
  CheckResult check_mu_bar_submersion(
      const PresentedSpace& space, const std::vector<SpacePoint>& samples) const;
  CheckResult check_integrable_system(
      const PresentedSpace& space, const std::vector<SpacePoint>& samples) const;

  // Slice-valued-map label of a point: the slice matrix representing the
  // orbit of moment(p).
  Mat label_of(const PresentedSpace& space, const SpacePoint& p) const;
  Vec label_coords(const PresentedSpace& space, const SpacePoint& p) const;

  // G-equivariant trivialization onto the model space; needs fibre_section
  // and transporter.  Throws TrivializeError on ambiguity or failure.
  ModelPoint trivialize(const PresentedSpace& space, const SpacePoint& p) const;

  // Runs every check; builds and verifies the trivialization when the
  // conditions pass and the capabilities are present.
  ConditionReport classify(const PresentedSpace& space,
                           const VerifierConfig& config) const;

 private:
  std::shared_ptr<const SlodowySlice> slice_;
  ModelSpace model_;
};

}  // namespace slicelab

#endif
