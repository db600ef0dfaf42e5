#include "strip_steiner/random_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "strip_steiner/errors.hpp"

namespace strip_steiner {

namespace {

Unit quantize(double v, std::int64_t scale, const char* what) {
  const double scaled = std::nearbyint(v * static_cast<double>(scale));
  const Unit limit = coord_limit(scale);
  if (!std::isfinite(scaled) || scaled > static_cast<double>(limit) ||
      scaled < -static_cast<double>(limit)) {
    throw CoordOverflow(std::string(what) + " exceeds coordinate range");
  }
  return static_cast<Unit>(scaled);
}

PointSet generate_impl(const GenSpec& spec, bool cap_spacings) {
  if (spec.n < 1) throw std::invalid_argument("generate: n must be >= 1");
  if (!(spec.delta > 0)) throw std::invalid_argument("generate: delta must be > 0");
  if (spec.scale < 1) throw std::invalid_argument("generate: scale must be >= 1");

  Prng prng(spec.seed);
  std::vector<double> x(spec.n);
  double acc = 0;
  for (std::size_t i = 0; i < spec.n; ++i) {
    double d = prng.exponential();
    if (cap_spacings) {
      while (d >= spec.delta) d = prng.exponential();
    }
    acc += d;
    x[i] = acc;
  }
  std::vector<double> y(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) y[i] = prng.uniform01() * spec.delta;

  PointSet ps;
  ps.scale = spec.scale;
  ps.delta = quantize(spec.delta, spec.scale, "delta");
  if (ps.delta <= 0) throw std::invalid_argument("generate: delta rounds to 0 units");
  ps.points.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    Point p{quantize(x[i], spec.scale, "x"), quantize(y[i], spec.scale, "y")};
    p.y = std::clamp<Unit>(p.y, 0, ps.delta);  // quantisation may nudge past the rim
    ps.points.push_back(p);
  }
  std::sort(ps.points.begin(), ps.points.end(), [](const Point& a, const Point& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  return ps;
}

}  // namespace

PointSet generate_random_instance(const GenSpec& spec) {
  return generate_impl(spec, false);
}

PointSet generate_random_instance_spacing_capped(const GenSpec& spec) {
  return generate_impl(spec, true);
}

PointSet generate_hooks(const HookSpec& spec) {
  const std::size_t m = spec.num_hooks;
  const std::size_t h = spec.points_per_hook;
  if (m < 1) throw std::invalid_argument("generate_hooks: need at least one hook");
  if (h < 2) throw std::invalid_argument("generate_hooks: need >= 2 points per hook");
  if (spec.probe_choices.size() != m) {
    throw InvalidProbe("generate_hooks: need exactly one probe choice per hook");
  }
  for (std::size_t c : spec.probe_choices) {
    if (c >= h) throw InvalidProbe("generate_hooks: probe choice out of range");
  }

  const Unit stride = static_cast<Unit>(m);
  const Unit band = spec.band_separation > 0 ? spec.band_separation
                                             : 100 * static_cast<Unit>(m);
  const Unit off_max = static_cast<Unit>(h) / 2;  // ceil((h-1)/2)

  auto hook_center = [&](std::size_t j) {
    return static_cast<Unit>(m - 1 - j) * band + off_max;
  };
  auto hook_point_y = [&](std::size_t j, std::size_t t) {
    const Unit c = hook_center(j);
    if (t == 0) return c;
    const Unit k = static_cast<Unit>((t + 1) / 2);
    return t % 2 == 1 ? c + k : c - k;
  };

  const Unit needed = hook_center(0) + off_max;
  Unit delta_units;
  if (spec.delta > 0) {
    delta_units = quantize(spec.delta, spec.scale, "delta");
    if (delta_units < needed) {
      throw std::invalid_argument("generate_hooks: delta too small for the gadget");
    }
  } else {
    delta_units = needed;
  }

  std::vector<Point> pts;
  // Hooks: point t of hook j at x = t*m + (m-1-j).
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t t = 0; t < h; ++t) {
      pts.push_back({static_cast<Unit>(t) * stride + static_cast<Unit>(m - 1 - j),
                     hook_point_y(j, t)});
    }
  }
  // Connectors q_j at the leftmost-point height, and midpoints r_j.
  for (std::size_t j = 0; j < m; ++j) {
    pts.push_back({-static_cast<Unit>(2 * j + 1), hook_center(j)});
  }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    pts.push_back({-static_cast<Unit>(2 * j + 2),
                   (hook_center(j) + hook_center(j + 1)) / 2});
  }
  // Probes to the right of all hooks.
  const Unit hooks_end = static_cast<Unit>(h) * stride;
  for (std::size_t j = 0; j < m; ++j) {
    pts.push_back({hooks_end + static_cast<Unit>(j), hook_point_y(j, spec.probe_choices[j])});
  }

  return make_point_set(std::move(pts), delta_units, spec.scale);
}

std::size_t hook_probe_separator(const PointSet& ps, const HookSpec& spec) {
  return ps.size() - spec.num_hooks - 1;
}

}  // namespace strip_steiner
