#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mtower::algebra {

/// Role of a ring variable. Arithmetic treats all classes alike; the tag only
/// matters for evaluation at points, jet differentiation and reporting.
enum class VarClass : std::uint8_t { coordinate, parameter, jet };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Collects variable declarations and produces an immutable Ring.
///
/// Jet symbols stand for the partial derivatives of unknown functions of some
/// base coordinates: `jets({"A"}, {"t","x0","y0"}, 2)` declares A, A_t, A_x0,
/// A_y0, A_tt, A_tx0, ... and records how the total derivative along a base
/// coordinate shifts one symbol into the next.
class RingBuilder {
 public:
  RingBuilder& coordinate(std::string name);
  RingBuilder& parameter(std::string name);
  RingBuilder& jets(std::vector<std::string> functions, std::vector<std::string> base,
                    unsigned order);

  RingPtr build() const;

 private:
  struct Decl {
    std::string name;
    VarClass cls;
  };
  std::vector<Decl> decls_;
  std::vector<std::string> jet_functions_;
  std::vector<std::string> jet_base_;
  unsigned jet_order_ = 0;
  bool has_jets_ = false;
};

class Ring {
 public:
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  VarClass var_class(std::size_t v) const { return classes_[v]; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws DomainError for unknown names.
  std::size_t index(std::string_view name) const;

  bool has_jets() const { return !jet_functions_.empty(); }
  unsigned jet_order() const { return jet_order_; }
  const std::vector<std::string>& jet_functions() const { return jet_functions_; }
  const std::vector<std::size_t>& jet_base() const { return jet_base_; }

  /// Position of `v` among the jet base coordinates.
  std::optional<std::size_t> base_slot(std::size_t v) const;
  /// Derivative of jet symbol `v` along base slot `slot`; nullopt when it would
  /// exceed the truncation order. Must only be called for jet variables.
  std::optional<std::size_t> jet_derivative(std::size_t v, std::size_t slot) const;
  /// The symbol for d^alpha f, if allocated.
  std::optional<std::size_t> jet_symbol(std::size_t function,
                                        std::span<const unsigned> multi_index) const;
  unsigned jet_total_order(std::size_t v) const;

 private:
  friend class RingBuilder;
  Ring() = default;

  struct JetData {
    std::size_t function = 0;
    std::vector<unsigned> multi_index;
    std::vector<std::optional<std::size_t>> derivative;
  };

  std::vector<std::string> names_;
  std::vector<VarClass> classes_;
  std::unordered_map<std::string, std::size_t> lookup_;

  std::vector<std::string> jet_functions_;
  std::vector<std::size_t> jet_base_;
  unsigned jet_order_ = 0;
  std::vector<std::optional<std::size_t>> base_slot_;
  std::unordered_map<std::size_t, JetData> jet_data_;
};

/// Name of the jet symbol for d^alpha f over the given base names, e.g.
/// ("A", {1,1,0}, {"t","x0","y0"}) -> "A_tx0".
std::string jet_name(std::string_view function, std::span<const unsigned> multi_index,
                     std::span<const std::string> base);

}  // namespace mtower::algebra
