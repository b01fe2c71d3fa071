#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mtower/flagcomb.hpp"
#include "mtower/geometry.hpp"

namespace mtower::charts {

using algebra::RFVector;
using algebra::RingPtr;
using algebra::Scalar;

/// An additive constant: a number or the name of a symbolic parameter.
using SlotValue = std::variant<Scalar, std::string>;
std::string to_string(const SlotValue& v);
/// "1", "-1/2" or an identifier such as "a".
SlotValue parse_slot_value(std::string_view text);

struct StepConstants {
  std::optional<SlotValue> x;
  std::optional<SlotValue> y;
};
/// Constants keyed by 1-based step number.
using ConstantAssignment = std::map<std::size_t, StepConstants>;

/// Parses "step4=1,1", "step5=y:a", "step5=x:b" or "step3=0,c" and merges
/// the result into `into`. Throws DomainError on bad syntax.
void parse_constant_spec(std::string_view spec, ConstantAssignment& into);
ConstantAssignment parse_constants(const std::vector<std::string>& specs);
/// Inverse of parse_constants: one "stepK=..." entry per step, ascending.
std::vector<std::string> constant_specs(const ConstantAssignment& constants);

struct ChartStep {
  unsigned letter = 1;
  SlotValue const_x = Scalar(0);
  SlotValue const_y = Scalar(0);
};

struct ChartOptions {
  /// When positive, the ring also carries jets of the base field components
  /// A, B, C in (t, x0, y0) up to this order.
  unsigned jet_order = 0;
  /// Additional parameter symbols to declare in the ring.
  std::vector<std::string> extra_parameters;
};

/// A polynomial chart of a stage-r special 2-flag: coordinates
/// t, x0, y0, x1, y1, ..., xr, yr, the main generator W_r and the fiber
/// fields d/dxr, d/dyr.
class Chart {
 public:
  const flagcomb::ClassCode& code() const { return code_; }
  const std::vector<ChartStep>& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  const RingPtr& ring() const { return frame_->ring; }
  const geometry::FramePtr& frame() const { return frame_; }
  std::size_t dim() const { return frame_->dim(); }
  const std::vector<std::string>& parameters() const { return parameters_; }
  const ConstantAssignment& constants() const { return constants_; }

  static std::size_t x_slot(std::size_t k) { return 1 + 2 * k; }
  static std::size_t y_slot(std::size_t k) { return 2 + 2 * k; }

  /// Main generator of stage k (0 <= k <= r) on the full frame; W_0 = d/dt.
  const geometry::VectorField& stage_generator(std::size_t k) const { return stages_[k]; }
  const geometry::VectorField& main_generator() const { return stages_.back(); }
  /// Frame slot of the coordinate whose coefficient in W_k is 1.
  std::size_t pivot(std::size_t k) const { return pivots_[k]; }

  std::vector<geometry::VectorField> generators() const;
  geometry::Distribution distribution() const;

  /// Replaces the listed parameters by numbers.
  Chart specialized(const std::map<std::string, Scalar>& values) const;

 private:
  friend Chart build_chart(const flagcomb::ClassCode&, const ConstantAssignment&, const ChartOptions&);

  flagcomb::ClassCode code_;
  std::vector<ChartStep> steps_;
  ConstantAssignment constants_;
  geometry::FramePtr frame_;
  std::vector<std::string> parameters_;
  std::vector<geometry::VectorField> stages_;
  std::vector<std::size_t> pivots_;
};

/// Throws DomainError for m != 2 or constants at slots the letter forbids
/// (step 1, the x-slot of letter 2, both slots of letter 3).
Chart build_chart(const flagcomb::ClassCode& code, const ConstantAssignment& constants,
                  const ChartOptions& options = {});
Chart build_chart(std::string_view code, const ConstantAssignment& constants, const ChartOptions& options = {});

/// One-forms as coefficient vectors over the chart frame.
struct PfaffSystem {
  geometry::FramePtr frame;
  std::vector<RFVector> forms;

  std::vector<std::string> to_strings() const;
};

/// 2r one-forms, two per step, each with a unit coefficient on one
/// differential, spanning the annihilator of the chart distribution.
PfaffSystem pfaffian_system(const Chart& chart);

/// Parses "dx4 - (b + x5)*dy3" over the chart frame.
RFVector parse_form(const geometry::FramePtr& frame, std::string_view text);
std::string form_to_string(const geometry::FramePtr& frame, const RFVector& form);
/// Contraction of a form with a vector field.
algebra::RationalFunction contract(const RFVector& form, const geometry::VectorField& v);
/// Equality of the spans of two sets of forms over rational functions.
bool form_span_equal(const geometry::FramePtr& frame, const std::vector<RFVector>& a, const std::vector<RFVector>& b);

struct Fixture {
  std::string name;
  std::string code;
  ConstantAssignment constants;
  /// The published ten-equation Pfaffian normal form, one form per entry.
  std::vector<std::string> pfaffian;
  std::string note;
};

/// The six reference germs: zzz, 212, 121, 123one, 121two, 121three.
const std::vector<Fixture>& named_fixtures();
/// Throws DomainError for unknown names.
const Fixture& fixture(std::string_view name);
Chart build_fixture(std::string_view name, const ChartOptions& options = {});

}  // namespace mtower::charts
