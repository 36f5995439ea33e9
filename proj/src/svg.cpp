#include "minred/svg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace minred {

namespace {

// Cayley transform H -> unit disk, j -> 0; hyperbolic circles around j map to
// centered Euclidean circles of radius tanh(dist/2).
std::pair<double, double> to_disk(const UpperHalfPoint& z) {
    // w = (z - i) / (z + i)
    double nr = z.t, ni = z.u - 1.0;
    double dr = z.t, di = z.u + 1.0;
    double den = dr * dr + di * di;
    return {(nr * dr + ni * di) / den, (ni * dr - nr * di) / den};
}

void dot(std::ostringstream& os, const UpperHalfPoint& z, double r, const char* fill) {
    auto [x, y] = to_disk(z);
    os << "  <circle cx=\"" << x << "\" cy=\"" << -y << "\" r=\"" << r << "\" fill=\"" << fill
       << "\"/>\n";
}

}  // namespace

std::string render_tree_svg(const SearchStats& stats) {
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.08 -1.08 2.16 2.16\" "
          "width=\"720\" height=\"720\">\n";
    os << "  <rect x=\"-1.08\" y=\"-1.08\" width=\"2.16\" height=\"2.16\" fill=\"white\"/>\n";
    // search region at the final bound
    double region = stats.final_bound > 1.0
                        ? std::tanh(0.5 * std::acosh(stats.final_bound))
                        : 0.0;
    os << "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#404040\" "
          "stroke-width=\"0.006\"/>\n";
    if (region > 0.0)
        os << "  <circle cx=\"0\" cy=\"0\" r=\"" << region
           << "\" fill=\"#cfe7f7\" stroke=\"none\"/>\n";
    for (const NodeRecord& n : stats.trace)
        if (!n.expanded) dot(os, n.point, 0.008, "#9e9e9e");
    for (const NodeRecord& n : stats.trace)
        if (n.expanded) dot(os, n.point, 0.011, "#d62728");
    dot(os, stats.z_form, 0.022, "#1f77b4");
    dot(os, stats.minimizer, 0.022, "#2ca02c");
    os << "</svg>\n";
    return os.str();
}

void write_tree_svg(const std::string& path, const SearchStats& stats) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open SVG output file: " + path);
    out << render_tree_svg(stats);
}

}  // namespace minred
