#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace thermoqi {

/// The four Bell states. The enumerator order is the canonical tie-break order.
enum class BellLabel { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellLabel, 4> kBellLabels = {
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

constexpr std::size_t index(BellLabel label) { return static_cast<std::size_t>(label); }

std::string_view to_string(BellLabel label);
std::optional<BellLabel> parse_bell_label(std::string_view text);

/// Occupation probabilities of the four Bell states, indexed by BellLabel.
///
/// Construction validates that every weight lies in [0, 1] and that they sum
/// to one within 1e-12; an invalid vector throws std::invalid_argument.
class BellWeights {
 public:
  explicit BellWeights(const std::array<double, 4>& p);

  static BellWeights uniform();
  static BellWeights pure(BellLabel label);

  double operator[](BellLabel label) const { return p_[index(label)]; }
  const std::array<double, 4>& values() const { return p_; }

  /// Largest weight; ties resolve to the earliest label in canonical order.
  BellLabel dominant_label() const;
  double dominant_weight() const { return (*this)[dominant_label()]; }

 private:
  std::array<double, 4> p_;
};

}  // namespace thermoqi
