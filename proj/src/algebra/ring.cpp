#include "mtower/algebra/ring.hpp"

#include <map>

#include "mtower/errors.hpp"

namespace mtower::algebra {

namespace {

// Multi-indices of the given length and total degree, t-heaviest first.
void multi_indices(std::size_t length, unsigned degree, std::vector<unsigned>& prefix,
                   std::vector<std::vector<unsigned>>& out) {
  if (prefix.size() + 1 == length) {
    prefix.push_back(degree);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (unsigned k = degree + 1; k-- > 0;) {
    prefix.push_back(k);
    multi_indices(length, degree - k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::string jet_name(std::string_view function, std::span<const unsigned> multi_index,
                     std::span<const std::string> base) {
  std::string name(function);
  bool first = true;
  for (std::size_t i = 0; i < multi_index.size(); ++i) {
    for (unsigned k = 0; k < multi_index[i]; ++k) {
      if (first) {
        name += '_';
        first = false;
      }
      name += base[i];
    }
  }
  return name;
}

RingBuilder& RingBuilder::coordinate(std::string name) {
  decls_.push_back({std::move(name), VarClass::coordinate});
  return *this;
}

RingBuilder& RingBuilder::parameter(std::string name) {
  decls_.push_back({std::move(name), VarClass::parameter});
  return *this;
}

RingBuilder& RingBuilder::jets(std::vector<std::string> functions, std::vector<std::string> base,
                               unsigned order) {
  if (has_jets_) throw DomainError("jet symbols declared twice");
  if (functions.empty() || base.empty()) throw DomainError("empty jet declaration");
  jet_functions_ = std::move(functions);
  jet_base_ = std::move(base);
  jet_order_ = order;
  has_jets_ = true;
  return *this;
}

RingPtr RingBuilder::build() const {
  std::shared_ptr<Ring> ring(new Ring());
  auto add = [&](const std::string& name, VarClass cls) {
    if (name.empty()) throw DomainError("empty variable name");
    if (!ring->lookup_.emplace(name, ring->names_.size()).second) {
      throw DomainError("duplicate variable name '" + name + "'");
    }
    ring->names_.push_back(name);
    ring->classes_.push_back(cls);
  };
  for (const auto& d : decls_) add(d.name, d.cls);

  if (has_jets_) {
    ring->jet_functions_ = jet_functions_;
    ring->jet_order_ = jet_order_;
    for (const auto& b : jet_base_) {
      auto it = ring->lookup_.find(b);
      if (it == ring->lookup_.end()) throw DomainError("jet base variable '" + b + "' not declared");
      ring->jet_base_.push_back(it->second);
    }
    std::map<std::pair<std::size_t, std::vector<unsigned>>, std::size_t> by_index;
    for (std::size_t f = 0; f < jet_functions_.size(); ++f) {
      for (unsigned d = 0; d <= jet_order_; ++d) {
        std::vector<std::vector<unsigned>> idx;
        std::vector<unsigned> prefix;
        multi_indices(jet_base_.size(), d, prefix, idx);
        for (auto& alpha : idx) {
          std::size_t v = ring->names_.size();
          add(jet_name(jet_functions_[f], alpha, jet_base_), VarClass::jet);
          by_index.emplace(std::make_pair(f, alpha), v);
          ring->jet_data_[v] = Ring::JetData{f, alpha, {}};
        }
      }
    }
    for (auto& [v, data] : ring->jet_data_) {
      data.derivative.resize(jet_base_.size());
      for (std::size_t s = 0; s < jet_base_.size(); ++s) {
        auto alpha = data.multi_index;
        ++alpha[s];
        auto it = by_index.find({data.function, alpha});
        if (it != by_index.end()) data.derivative[s] = it->second;
      }
    }
  }

  ring->base_slot_.assign(ring->names_.size(), std::nullopt);
  for (std::size_t s = 0; s < ring->jet_base_.size(); ++s) ring->base_slot_[ring->jet_base_[s]] = s;
  return ring;
}

std::optional<std::size_t> Ring::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Ring::index(std::string_view name) const {
  auto v = find(name);
  if (!v) throw DomainError("unknown variable '" + std::string(name) + "'");
  return *v;
}

std::optional<std::size_t> Ring::base_slot(std::size_t v) const { return base_slot_[v]; }

std::optional<std::size_t> Ring::jet_derivative(std::size_t v, std::size_t slot) const {
  return jet_data_.at(v).derivative[slot];
}

std::optional<std::size_t> Ring::jet_symbol(std::size_t function,
                                            std::span<const unsigned> multi_index) const {
  if (function >= jet_functions_.size() || multi_index.size() != jet_base_.size()) return std::nullopt;
  std::vector<std::string> base;
  for (auto b : jet_base_) base.push_back(names_[b]);
  return find(jet_name(jet_functions_[function], multi_index, base));
}

unsigned Ring::jet_total_order(std::size_t v) const {
  unsigned total = 0;
  for (auto k : jet_data_.at(v).multi_index) total += k;
  return total;
}

}  // namespace mtower::algebra
