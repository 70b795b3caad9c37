#pragma once

// Static SVG figures of Bloch-disk cross sections: a unit circle with the
// state and POVM vectors drawn as arrows from the centre. Pixel y grows
// downwards, so the vertical plane axis is negated: for the default X-Z plane
// a vector v ends at (cx + R v_x, cy - R v_z).

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "povm/bloch.hpp"
#include "povm/discrimination.hpp"
#include "povm/error.hpp"
#include "povm/vec3.hpp"

namespace povm {

enum class ArrowStyle { State, Povm, Inconclusive };

inline const char* to_string(ArrowStyle s) {
  switch (s) {
    case ArrowStyle::State: return "state";
    case ArrowStyle::Povm: return "povm";
    case ArrowStyle::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Projection plane spanned by two orthonormal Bloch directions.
struct Plane {
  Vec3 horizontal = Vec3::unit_x();
  Vec3 vertical = Vec3::unit_z();
  std::string horizontal_label = "X";
  std::string vertical_label = "Z";

  void check() const {
    constexpr double eps = 1e-9;
    if (std::fabs(horizontal.norm() - 1.0) > eps || std::fabs(vertical.norm() - 1.0) > eps ||
        std::fabs(horizontal.dot(vertical)) > eps) {
      throw Error(ErrorCode::InvalidArgument, "projection axes must be orthonormal");
    }
  }
};

struct Arrow {
  Vec3 v;
  ArrowStyle style = ArrowStyle::Povm;
  std::string label;
};

struct FigureSpec {
  Plane plane;
  std::vector<Arrow> arrows;
  int width = 400;
  int height = 400;
  double radius = 150.0;  // pixels per unit Bloch length
};

struct Pixel {
  double x;
  double y;
};

inline Pixel figure_center(const FigureSpec& fig) { return {0.5 * fig.width, 0.5 * fig.height}; }

inline Pixel project(const FigureSpec& fig, const Vec3& v) {
  const Pixel c = figure_center(fig);
  return {c.x + fig.radius * v.dot(fig.plane.horizontal), c.y - fig.radius * v.dot(fig.plane.vertical)};
}

inline void check_figure(const FigureSpec& fig) {
  if (fig.width <= 0 || fig.height <= 0 || !(fig.radius > 0.0) || !std::isfinite(fig.radius)) {
    throw Error(ErrorCode::InvalidArgument, "canvas size and radius must be positive");
  }
  fig.plane.check();
  for (const auto& arrow : fig.arrows) {
    const Pixel p = project(fig, arrow.v);
    if (p.x < 0.0 || p.y < 0.0 || p.x > fig.width || p.y > fig.height) {
      throw Error(ErrorCode::InvalidArgument, "arrow endpoint falls outside the canvas");
    }
  }
}

namespace detail {

inline std::string fmt_px(double v) {
  std::array<char, 64> buf{};
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 3);
  return {buf.data(), res.ptr};
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct StyleInk {
  const char* color;
  const char* dash;
};

inline StyleInk ink(ArrowStyle s) {
  switch (s) {
    case ArrowStyle::State: return {"#000000", nullptr};
    case ArrowStyle::Povm: return {"#808080", nullptr};
    case ArrowStyle::Inconclusive: return {"#808080", "6 4"};
  }
  return {"#000000", nullptr};
}

}  // namespace detail

inline std::string render_svg(const FigureSpec& fig) {
  using detail::fmt_px;
  check_figure(fig);
  const Pixel c = figure_center(fig);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(fig.width) +
         "\" height=\"" + std::to_string(fig.height) + "\" viewBox=\"0 0 " +
         std::to_string(fig.width) + " " + std::to_string(fig.height) + "\">\n";
  out += "  <defs>\n";
  for (ArrowStyle s : {ArrowStyle::State, ArrowStyle::Povm, ArrowStyle::Inconclusive}) {
    out += std::string("    <marker id=\"head-") + to_string(s) +
           "\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
           "orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"" +
           detail::ink(s).color + "\"/></marker>\n";
  }
  out += "  </defs>\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  out += "  <path class=\"axes\" d=\"M 0 " + fmt_px(c.y) + " H " + std::to_string(fig.width) + " M " +
         fmt_px(c.x) + " 0 V " + std::to_string(fig.height) +
         "\" stroke=\"#d0d0d0\" stroke-width=\"1\" fill=\"none\"/>\n";
  out += "  <text x=\"" + fmt_px(fig.width - 4.0) + "\" y=\"" + fmt_px(c.y - 6.0) +
         "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"end\">" +
         detail::xml_escape(fig.plane.horizontal_label) + "</text>\n";
  out += "  <text x=\"" + fmt_px(c.x + 6.0) + "\" y=\"16.000\" font-family=\"sans-serif\" font-size=\"14\">" +
         detail::xml_escape(fig.plane.vertical_label) + "</text>\n";
  out += "  <circle class=\"unit-circle\" cx=\"" + fmt_px(c.x) + "\" cy=\"" + fmt_px(c.y) + "\" r=\"" +
         fmt_px(fig.radius) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  for (const auto& arrow : fig.arrows) {
    const Pixel tip = project(fig, arrow.v);
    const auto style = detail::ink(arrow.style);
    out += std::string("  <line class=\"arrow arrow-") + to_string(arrow.style) + "\" x1=\"" + fmt_px(c.x) +
           "\" y1=\"" + fmt_px(c.y) + "\" x2=\"" + fmt_px(tip.x) + "\" y2=\"" + fmt_px(tip.y) +
           "\" stroke=\"" + style.color + "\" stroke-width=\"2.5\"";
    if (style.dash) out += std::string(" stroke-dasharray=\"") + style.dash + "\"";
    out += std::string(" marker-end=\"url(#head-") + to_string(arrow.style) + ")\"/>\n";
    if (!arrow.label.empty()) {
      const Pixel at = project(fig, arrow.v * 1.08);
      out += "  <text class=\"label\" x=\"" + fmt_px(at.x) + "\" y=\"" + fmt_px(at.y) +
             "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
             detail::xml_escape(arrow.label) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

// ---------------------------------------------------------------------------
// Figure builders

inline double longest_arrow(const FigureSpec& fig) {
  double len = 1.0;  // the unit circle itself
  for (const auto& a : fig.arrows) len = std::fmax(len, a.v.norm());
  return len;
}

/// Shrinks the radius, if needed, so every arrow and its label fit.
inline void fit_radius(FigureSpec& fig, double margin_px = 24.0) {
  const double half = 0.5 * std::min(fig.width, fig.height) - margin_px;
  fig.radius = std::fmin(fig.radius, half / (1.08 * longest_arrow(fig)));
}

inline FigureSpec povm_figure(const PovmSet& set, const std::vector<std::pair<std::string, BlochState>>& states = {}) {
  FigureSpec fig;
  for (const auto& [name, st] : states) fig.arrows.push_back({st.r(), ArrowStyle::State, name});
  for (std::size_t i = 0; i < set.size(); ++i) {
    fig.arrows.push_back({set[i].v, ArrowStyle::Povm, "A" + std::to_string(i + 1)});
  }
  return fig;
}

/// Two state arrows, two detector arrows and the inconclusive arrow.
inline FigureSpec usd_figure(const UsdDesign& d) {
  FigureSpec fig;
  fig.arrows.push_back({d.r_psi, ArrowStyle::State, "Ψ"});
  fig.arrows.push_back({d.r_phi, ArrowStyle::State, "Φ"});
  fig.arrows.push_back({d.povm[kDetectPhi].v, ArrowStyle::Povm, "A1"});
  fig.arrows.push_back({d.povm[kDetectPsi].v, ArrowStyle::Povm, "A2"});
  fig.arrows.push_back({d.povm[kInconclusive].v, ArrowStyle::Inconclusive, "A?"});
  return fig;
}

/// A mixed element drawn dark next to its two rank-1 parts.
inline FigureSpec decomposition_figure(const PovmElement& e) {
  const Rank1Decomposition d = decompose_rank1(e);
  FigureSpec fig;
  fig.arrows.push_back({d.major.v, ArrowStyle::Povm, "c n"});
  fig.arrows.push_back({d.minor.v, ArrowStyle::Povm, "-d n"});
  fig.arrows.push_back({e.v, ArrowStyle::State, "v"});
  return fig;
}

}  // namespace povm
