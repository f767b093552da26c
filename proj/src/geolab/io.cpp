#include "psslab/geolab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

namespace psslab::geo {

using nlohmann::json;

namespace {

using File = std::unique_ptr<FILE, int (*)(FILE*)>;

File open_for_write(const std::filesystem::path& path) {
  File f(std::fopen(path.c_str(), "w"), &std::fclose);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

void put_number(FILE* f, double v) {
  if (std::isnan(v))
    std::fputs("nan", f);
  else
    std::fprintf(f, "%.17g", v);
}

// Blue (low) through white to red (high).
std::string colour(double v, double center, double half) {
  if (!std::isfinite(v)) return "#808080";
  double s = std::clamp((v - center) / half, -1.0, 1.0);
  int r = 255, g = 255, b = 255;
  if (s > 0) {
    g = b = static_cast<int>(std::lround(255 * (1 - s)));
  } else {
    r = g = static_cast<int>(std::lround(255 * (1 + s)));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

void write_planes_csv(const std::filesystem::path& path, const Lattice& grid, const std::vector<std::string>& names,
                      const std::vector<const Plane*>& planes) {
  if (names.size() != planes.size()) throw std::invalid_argument("one name per plane");
  for (const Plane* p : planes)
    if (p->size() != grid.size()) throw std::invalid_argument("plane does not match lattice");
  File f = open_for_write(path);
  std::fputs("t,x", f.get());
  for (const auto& n : names) std::fprintf(f.get(), ",%s", n.c_str());
  std::fputc('\n', f.get());
  for (std::size_t it = 0; it < grid.nt(); ++it)
    for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
      put_number(f.get(), grid.t[it]);
      std::fputc(',', f.get());
      put_number(f.get(), grid.x[ix]);
      for (const Plane* p : planes) {
        std::fputc(',', f.get());
        put_number(f.get(), (*p)[grid.index(it, ix)]);
      }
      std::fputc('\n', f.get());
    }
}

json to_json(const Bracket& b) { return {{"lo", b.lo}, {"hi", b.hi}, {"f_lo", b.f_lo}, {"f_hi", b.f_hi}}; }

json to_json(const SingularLocus& loc) {
  json slices = json::array();
  for (const auto& s : loc.slices) {
    json z{{"t", s.t},
           {"everywhere_degenerate", s.everywhere_degenerate},
           {"missing_zero", s.missing_zero},
           {"ux_zeros", json::array()}};
    for (const auto& b : s.ux_zeros) z["ux_zeros"].push_back(to_json(b));
    if (loc.lambda) {
      z["level_crossings"] = json::array();
      for (const auto& b : s.level_crossings) z["level_crossings"].push_back(to_json(b));
    }
    slices.push_back(std::move(z));
  }
  json j{{"slices", std::move(slices)},
         {"every_slice_has_zero", loc.every_slice_has_zero()},
         {"everywhere_degenerate_slices", loc.degenerate_slices()},
         {"bracket_width", kBracketWidth}};
  if (loc.lambda) {
    j["lambda"] = *loc.lambda;
    j["m_level"] = m_level(*loc.lambda);
  }
  return j;
}

json to_json(const Rect& r) {
  return {{"ix", {r.ix0, r.ix1}}, {"it", {r.it0, r.it1}}, {"x", {r.x0, r.x1}},
          {"t", {r.t0, r.t1}},    {"ux_sign", r.ux_sign}, {"min_abs_W", r.min_abs_W}};
}

json to_json(const DiscReport& r) {
  json j{{"found", r.found}, {"lambda", r.lambda}, {"w_min", r.w_min}, {"seed_slice", r.seed_slice}};
  if (r.found) {
    j["discs"] = {to_json(r.negative), to_json(r.positive)};
    j["disjoint"] = r.disjoint;
  } else {
    j["failure"] = r.failure;
  }
  j["note"] = "rectangles certify disc existence on the sampled lattice; C1 regularity is not certified";
  return j;
}

json to_json(const CurvatureStats& s) {
  return {{"unmasked", s.unmasked},
          {"masked", s.masked},
          {"median_abs_K_plus_1", s.median_abs_dev},
          {"max_abs_K_plus_1", s.max_abs_dev}};
}

void write_heatmap_svg(const std::filesystem::path& path, const Lattice& grid, const Plane& values,
                       const HeatmapOptions& opt) {
  if (values.size() != grid.size()) throw std::invalid_argument("plane does not match lattice");
  if (grid.nx() == 0 || grid.nt() == 0) throw std::invalid_argument("empty lattice");
  const std::size_t sx = std::max<std::size_t>(1, (grid.nx() + opt.max_cells - 1) / opt.max_cells);
  const std::size_t st = std::max<std::size_t>(1, (grid.nt() + opt.max_cells - 1) / opt.max_cells);
  const std::size_t cx = (grid.nx() + sx - 1) / sx, ct = (grid.nt() + st - 1) / st;
  const double cell = 3, left = 50, top = 30;
  const double w = cx * cell, h = ct * cell;

  File f = open_for_write(path);
  FILE* o = f.get();
  std::fprintf(o, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\">\n", w + left + 20,
               h + top + 40);
  std::fputs("<defs><pattern id=\"hatch\" width=\"4\" height=\"4\" patternUnits=\"userSpaceOnUse\">"
             "<path d=\"M0,4 L4,0\" stroke=\"#404040\" stroke-width=\"0.6\"/></pattern></defs>\n",
             o);
  std::fprintf(o, "<text x=\"%g\" y=\"18\" font-family=\"sans-serif\" font-size=\"12\">%s</text>\n", left,
               opt.title.c_str());
  // t increases upward.
  for (std::size_t a = 0; a < ct; ++a)
    for (std::size_t b = 0; b < cx; ++b) {
      const std::size_t i = grid.index(a * st, b * sx);
      const double px = left + b * cell, py = top + h - (a + 1) * cell;
      const bool masked = opt.mask && (*opt.mask)[i];
      std::fprintf(o, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"%s\"/>\n", px, py, cell, cell,
                   masked ? "#d0d0d0" : colour(values[i], opt.center, opt.half_range).c_str());
      if (masked)
        std::fprintf(o, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"url(#hatch)\"/>\n", px, py, cell,
                     cell);
    }
  if (opt.zeros) {
    const double x0 = grid.x.front(), x1 = grid.x.back(), t0 = grid.t.front(), t1 = grid.t.back();
    const double period = grid.nx() > 1 ? (x1 - x0) * grid.nx() / (grid.nx() - 1) : 1;
    for (const auto& s : opt.zeros->slices)
      for (const auto& b : s.ux_zeros) {
        double x = b.mid();
        if (x > x0 + period) x -= period;
        const double px = left + (x - x0) / std::max(x1 - x0, 1e-300) * w;
        const double py = top + h - (t1 > t0 ? (s.t - t0) / (t1 - t0) : 0) * h;
        std::fprintf(o, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.2\" fill=\"black\"/>\n", px, py);
      }
  }
  std::fprintf(o,
               "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"10\">x from %.4g to %.4g; "
               "t from %.4g (bottom) to %.4g (top)</text>\n",
               left, top + h + 16, grid.x.front(), grid.x.back(), grid.t.front(), grid.t.back());
  std::fputs("</svg>\n", o);
}

}  // namespace psslab::geo
