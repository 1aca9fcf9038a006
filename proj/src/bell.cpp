#include "thermoqi/bell.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace thermoqi {

std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus:
      return "PhiPlus";
    case BellLabel::PhiMinus:
      return "PhiMinus";
    case BellLabel::PsiPlus:
      return "PsiPlus";
    case BellLabel::PsiMinus:
      return "PsiMinus";
  }
  return "?";
}

std::optional<BellLabel> parse_bell_label(std::string_view text) {
  for (BellLabel label : kBellLabels) {
    if (to_string(label) == text) return label;
  }
  return std::nullopt;
}

BellWeights::BellWeights(const std::array<double, 4>& p) : p_(p) {
  double sum = 0.0;
  for (double w : p_) {
    if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
      std::ostringstream msg;
      msg << "Bell weight out of [0,1]: " << w;
      throw std::invalid_argument(msg.str());
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Bell weights must sum to 1, got " << sum;
    throw std::invalid_argument(msg.str());
  }
}

BellWeights BellWeights::uniform() { return BellWeights({0.25, 0.25, 0.25, 0.25}); }

BellWeights BellWeights::pure(BellLabel label) {
  std::array<double, 4> p{};
  p[index(label)] = 1.0;
  return BellWeights(p);
}

BellLabel BellWeights::dominant_label() const {
  BellLabel best = BellLabel::PhiPlus;
  for (BellLabel label : kBellLabels) {
    if ((*this)[label] > (*this)[best]) best = label;
  }
  return best;
}

}  // namespace thermoqi
