#include "photocorr/contours.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace photocorr {

size_t ContourSet::total_points() const {
    size_t count = 0;
    for (const auto& line : polylines) count += line.size();
    return count;
}

namespace {

uint64_t bits_of(double x) {
    uint64_t b = 0;
    std::memcpy(&b, &x, sizeof(b));
    return b;
}

// Merges segment endpoints into shared nodes by exact coordinate identity.
// Crossings on a shared cell edge are computed from the same corner values,
// so they land on identical bit patterns from both sides; crossings that
// degenerate to a grid corner are shared across all adjacent cells.
struct SegmentSoup {
    std::map<std::pair<uint64_t, uint64_t>, int> ids;
    std::vector<ContourPoint> points;
    std::vector<std::array<int, 2>> segments;

    int node(const ContourPoint& p) {
        auto key = std::make_pair(bits_of(p.alpha1), bits_of(p.alpha2));
        auto [it, inserted] = ids.try_emplace(key, static_cast<int>(points.size()));
        if (inserted) points.push_back(p);
        return it->second;
    }

    void add(const ContourPoint& a, const ContourPoint& b) {
        const int u = node(a), v = node(b);
        if (u != v) segments.push_back({u, v});
    }
};

ContourPoint edge_crossing(const ContourPoint& pa, double sa, const ContourPoint& pb, double sb) {
    const double t = sa / (sa - sb);
    return {(1.0 - t) * pa.alpha1 + t * pb.alpha1, (1.0 - t) * pa.alpha2 + t * pb.alpha2};
}

std::vector<std::vector<ContourPoint>> stitch(const SegmentSoup& soup) {
    const int n_nodes = static_cast<int>(soup.points.size());
    std::vector<std::vector<std::pair<int, int>>> adjacent(static_cast<size_t>(n_nodes));
    for (int s = 0; s < static_cast<int>(soup.segments.size()); ++s) {
        const auto [u, v] = soup.segments[static_cast<size_t>(s)];
        adjacent[static_cast<size_t>(u)].emplace_back(v, s);
        adjacent[static_cast<size_t>(v)].emplace_back(u, s);
    }

    std::vector<bool> used(soup.segments.size(), false);
    std::vector<std::vector<ContourPoint>> polylines;
    auto walk = [&](int start) {
        std::vector<ContourPoint> line{soup.points[static_cast<size_t>(start)]};
        int at = start;
        for (;;) {
            int next = -1;
            for (const auto& [nbr, seg] : adjacent[static_cast<size_t>(at)])
                if (!used[static_cast<size_t>(seg)]) {
                    used[static_cast<size_t>(seg)] = true;
                    next = nbr;
                    break;
                }
            if (next < 0) break;
            line.push_back(soup.points[static_cast<size_t>(next)]);
            at = next;
        }
        if (line.size() > 1) polylines.push_back(std::move(line));
    };

    // Open chains first, anchored at odd-degree nodes, then the remaining
    // closed loops.
    for (int u = 0; u < n_nodes; ++u)
        if (adjacent[static_cast<size_t>(u)].size() % 2 == 1) walk(u);
    for (int s = 0; s < static_cast<int>(soup.segments.size()); ++s)
        if (!used[static_cast<size_t>(s)]) walk(soup.segments[static_cast<size_t>(s)][0]);
    return polylines;
}

}  // namespace

ContourSet extract_contours(const ScalarField& field, double level) {
    validate_field(field);
    const int n = field.grid.n_points;
    const auto x = field.grid.alphas();

    SegmentSoup soup;
    for (int i = 0; i + 1 < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) {
            if (field.mask(i, j) || field.mask(i + 1, j) || field.mask(i, j + 1) ||
                field.mask(i + 1, j + 1))
                continue;

            const double s00 = field.values(i, j) - level;
            const double s10 = field.values(i + 1, j) - level;
            const double s11 = field.values(i + 1, j + 1) - level;
            const double s01 = field.values(i, j + 1) - level;
            const int index = int(s00 > 0.0) | int(s10 > 0.0) << 1 | int(s11 > 0.0) << 2 |
                              int(s01 > 0.0) << 3;
            if (index == 0 || index == 15) continue;

            const ContourPoint bl{x[size_t(i)], x[size_t(j)]};
            const ContourPoint br{x[size_t(i + 1)], x[size_t(j)]};
            const ContourPoint tr{x[size_t(i + 1)], x[size_t(j + 1)]};
            const ContourPoint tl{x[size_t(i)], x[size_t(j + 1)]};
            auto bottom = [&] { return edge_crossing(bl, s00, br, s10); };
            auto right = [&] { return edge_crossing(br, s10, tr, s11); };
            auto top = [&] { return edge_crossing(tl, s01, tr, s11); };
            auto left = [&] { return edge_crossing(bl, s00, tl, s01); };

            switch (index) {
                case 1: case 14: soup.add(left(), bottom()); break;
                case 2: case 13: soup.add(bottom(), right()); break;
                case 3: case 12: soup.add(left(), right()); break;
                case 4: case 11: soup.add(right(), top()); break;
                case 6: case 9: soup.add(bottom(), top()); break;
                case 8: case 7: soup.add(top(), left()); break;
                case 5:
                case 10: {
                    // Saddle: the cell-center value of the bilinear patch
                    // decides which diagonal the inside region follows.
                    const bool center_in = (s00 + s10 + s11 + s01) > 0.0;
                    const bool joins_main_diagonal = (index == 5) == center_in;
                    if (joins_main_diagonal) {
                        soup.add(bottom(), right());
                        soup.add(top(), left());
                    } else {
                        soup.add(left(), bottom());
                        soup.add(right(), top());
                    }
                    break;
                }
                default: break;
            }
        }
    }

    ContourSet set;
    set.level = level;
    set.polylines = stitch(soup);
    return set;
}

ScalarField ratio_field(const ScalarField& numerator, const ScalarField& denominator) {
    if (numerator.grid.n_points != denominator.grid.n_points)
        throw std::invalid_argument("ratio of fields on different grids");
    validate_field(numerator);
    validate_field(denominator);

    const int n = numerator.grid.n_points;
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!denominator.mask(i, j)) scale = std::max(scale, std::abs(denominator.values(i, j)));
    const double guard = 1e-12 * scale;

    ScalarField ratio;
    ratio.grid = numerator.grid;
    ratio.values = Eigen::ArrayXXd::Zero(n, n);
    ratio.mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, true);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (numerator.mask(i, j) || denominator.mask(i, j)) continue;
            const double den = denominator.values(i, j);
            if (std::abs(den) <= guard) continue;
            ratio.values(i, j) = numerator.values(i, j) / den;
            ratio.mask(i, j) = false;
        }
    return ratio;
}

ContourSet ratio_regions(const ScalarField& c_field, const ScalarField& g2_field,
                         double threshold) {
    auto set = extract_contours(ratio_field(c_field, g2_field), threshold);
    set.kind = ContourKind::RatioThreshold;
    return set;
}

double bilinear_value(const ScalarField& field, double alpha1, double alpha2) {
    const int n = field.grid.n_points;
    const double h = std::numbers::pi / double(n - 1);
    auto locate = [&](double a) {
        int cell = std::clamp(int(std::floor(a / h)), 0, n - 2);
        return std::make_pair(cell, a / h - double(cell));
    };
    const auto [i, t] = locate(alpha1);
    const auto [j, s] = locate(alpha2);
    return (1.0 - t) * (1.0 - s) * field.values(i, j) + t * (1.0 - s) * field.values(i + 1, j) +
           (1.0 - t) * s * field.values(i, j + 1) + t * s * field.values(i + 1, j + 1);
}

}  // namespace photocorr
