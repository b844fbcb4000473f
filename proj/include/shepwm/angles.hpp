#pragma once

#include <cstddef>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace shepwm {

inline constexpr double pi = std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * (pi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / pi); }

/// Ordered quarter-wave switching angles, radians.
///
/// A valid set has p >= 1 angles with 0 < theta_1 < ... < theta_p < pi/2.
/// Construction validates; raw candidate vectors (e.g. solver iterates that
/// may temporarily leave the range) stay as plain std::vector<double>.
class switching_angle_set {
 public:
  explicit switching_angle_set(std::vector<double> angles_rad)
      : angles_(std::move(angles_rad)) {
    if (angles_.empty())
      throw std::invalid_argument("switching_angle_set: need at least one angle");
    if (!(angles_.front() > 0.0))
      throw std::invalid_argument("switching_angle_set: theta_1 must be > 0");
    if (!(angles_.back() < pi / 2))
      throw std::invalid_argument("switching_angle_set: theta_p must be < pi/2");
    for (std::size_t i = 1; i < angles_.size(); ++i) {
      if (!(angles_[i - 1] < angles_[i])) {
        std::ostringstream msg;
        msg << "switching_angle_set: angles must be strictly increasing"
            << " (violated at index " << i << ")";
        throw std::invalid_argument(msg.str());
      }
    }
  }

  static switching_angle_set from_degrees(const std::vector<double>& deg) {
    std::vector<double> rad(deg.size());
    for (std::size_t i = 0; i < deg.size(); ++i) rad[i] = deg_to_rad(deg[i]);
    return switching_angle_set(std::move(rad));
  }

  std::size_t count() const { return angles_.size(); }
  double operator[](std::size_t i) const { return angles_[i]; }
  const std::vector<double>& radians() const { return angles_; }

  std::vector<double> degrees() const {
    std::vector<double> deg(angles_.size());
    for (std::size_t i = 0; i < angles_.size(); ++i) deg[i] = rad_to_deg(angles_[i]);
    return deg;
  }

  friend bool operator==(const switching_angle_set&, const switching_angle_set&) = default;

 private:
  std::vector<double> angles_;
};

/// True when a raw candidate satisfies 0 < theta_1 < ... < theta_p < pi/2.
inline bool ordering_valid(const std::vector<double>& angles_rad) {
  if (angles_rad.empty()) return false;
  if (!(angles_rad.front() > 0.0) || !(angles_rad.back() < pi / 2)) return false;
  for (std::size_t i = 1; i < angles_rad.size(); ++i)
    if (!(angles_rad[i - 1] < angles_rad[i])) return false;
  return true;
}

}  // namespace shepwm
