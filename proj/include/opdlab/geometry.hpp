#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "opdlab/design.hpp"
#include "opdlab/poly.hpp"

namespace opdlab {

/// The Desarguesian plane PG(2, GF(q)). Points and lines are normalized
/// homogeneous triples (last nonzero coordinate 1), enumerated in
/// lexicographic order; incidence is precomputed as bitsets so the
/// hyperoval machinery is pure bitset algebra.
class Plane {
  public:
    explicit Plane(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    std::uint32_t n_points() const { return std::uint32_t(points_.size()); }
    std::uint32_t n_lines() const { return n_points(); }

    const std::array<Elem, 3>& point(std::uint32_t i) const {
        return points_[i];
    }
    const std::array<Elem, 3>& line(std::uint32_t i) const {
        return points_[i];  // self-dual representation
    }
    std::uint32_t point_index(std::array<Elem, 3> triple) const;

    const Block& points_on_line(std::uint32_t line) const {
        return line_points_[line];
    }
    const Block& lines_through_point(std::uint32_t pt) const {
        return point_lines_[pt];
    }
    std::uint32_t line_through(std::uint32_t p1, std::uint32_t p2) const;

  private:
    std::array<Elem, 3> normalize(std::array<Elem, 3> t) const;

    FieldPtr field_;
    std::vector<std::array<Elem, 3>> points_;  // lex-sorted normalized triples
    std::vector<std::uint64_t> packed_;        // lookup keys, same order
    std::vector<Block> line_points_;
    std::vector<Block> point_lines_;
};

struct Hyperoval {
    Block point_set;                       // over plane point indices
    std::vector<std::uint32_t> points;    // ascending indices, q+2 of them
};

/// {(f(c), c, 1)} with the two infinite points (1,0,0), (0,1,0). Throws
/// when f is not an o-polynomial; the construction is re-validated
/// geometrically.
Hyperoval hyperoval_from(const Plane& plane, const Poly& f);

/// Size q+2 and every line meeting the set in 0 or 2 points.
bool is_hyperoval(const Plane& plane, const Block& point_set);

struct LineClassification {
    std::vector<std::uint32_t> secants;    // lines meeting H in 2 points
    std::vector<std::uint32_t> exterior;   // lines missing H
};

LineClassification classify_lines(const Plane& plane, const Hyperoval& h);

/// Steiner 2-((q-1)q/2, q/2, 1) design: points are the exterior lines,
/// one block per plane point off the hyperoval.
Design hyperoval_design_W(const Plane& plane, const Hyperoval& h);

/// Symmetric 2-(q^2-1, q^2/2-1, q^2/4-1) design on the exterior points;
/// the block of x collects the points joined to x by a secant, plus x.
Design hyperoval_design_S(const Plane& plane, const Hyperoval& h);

}  // namespace opdlab
