#include "opdlab/geometry.hpp"

#include <algorithm>

namespace opdlab {

namespace {

std::uint64_t pack(const std::array<Elem, 3>& t, std::uint32_t q) {
    return (std::uint64_t(t[0]) * q + t[1]) * q + t[2];
}

}  // namespace

Plane::Plane(FieldPtr field) : field_(std::move(field)) {
    const Field& F = *field_;
    const std::uint32_t q = F.q();
    points_.reserve(std::size_t(q) * q + q + 1);
    for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b) points_.push_back({a, b, 1});
    for (Elem a = 0; a < q; ++a) points_.push_back({a, 1, 0});
    points_.push_back({1, 0, 0});
    std::sort(points_.begin(), points_.end());

    packed_.reserve(points_.size());
    for (const auto& t : points_) packed_.push_back(pack(t, q));

    const std::uint32_t n = n_points();
    line_points_.assign(n, Block(n));
    point_lines_.assign(n, Block(n));
    for (std::uint32_t li = 0; li < n; ++li) {
        const auto& l = points_[li];
        for (std::uint32_t pi = 0; pi < n; ++pi) {
            const auto& pt = points_[pi];
            Elem dot = F.add(F.add(F.mul(l[0], pt[0]), F.mul(l[1], pt[1])),
                             F.mul(l[2], pt[2]));
            if (dot == 0) {
                line_points_[li].set(pi);
                point_lines_[pi].set(li);
            }
        }
    }
}

std::array<Elem, 3> Plane::normalize(std::array<Elem, 3> t) const {
    const Field& F = *field_;
    for (int i = 2; i >= 0; --i)
        if (t[i] != 0) {
            const Elem s = F.inv(t[i]);
            for (auto& c : t) c = F.mul(c, s);
            return t;
        }
    throw std::invalid_argument("zero triple has no projective class");
}

std::uint32_t Plane::point_index(std::array<Elem, 3> triple) const {
    const auto key = pack(normalize(triple), field_->q());
    auto it = std::lower_bound(packed_.begin(), packed_.end(), key);
    if (it == packed_.end() || *it != key)
        throw std::logic_error("triple not found in plane");
    return std::uint32_t(it - packed_.begin());
}

std::uint32_t Plane::line_through(std::uint32_t p1, std::uint32_t p2) const {
    const Field& F = *field_;
    const auto& a = points_[p1];
    const auto& b = points_[p2];
    std::array<Elem, 3> cross{
        F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
        F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
        F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0])),
    };
    return point_index(cross);
}

Hyperoval hyperoval_from(const Plane& plane, const Poly& f) {
    if (!is_opolynomial(f))
        throw std::domain_error("hyperovals need an o-polynomial");
    const Field& F = *plane.field();
    if (!f.field()->same_as(F))
        throw std::invalid_argument("field mismatch");
    Hyperoval h;
    h.point_set = Block(plane.n_points());
    for (Elem c = 0; c < F.q(); ++c)
        h.point_set.set(plane.point_index({f.eval(c), c, 1}));
    h.point_set.set(plane.point_index({1, 0, 0}));
    h.point_set.set(plane.point_index({0, 1, 0}));
    h.points = h.point_set.points();
    if (!is_hyperoval(plane, h.point_set))
        throw std::logic_error("constructed point set is not a hyperoval");
    return h;
}

bool is_hyperoval(const Plane& plane, const Block& point_set) {
    if (point_set.count() != plane.field()->q() + 2) return false;
    for (std::uint32_t li = 0; li < plane.n_lines(); ++li) {
        const std::uint32_t meet =
            plane.points_on_line(li).intersection_count(point_set);
        if (meet != 0 && meet != 2) return false;
    }
    return true;
}

LineClassification classify_lines(const Plane& plane, const Hyperoval& h) {
    LineClassification cls;
    for (std::uint32_t li = 0; li < plane.n_lines(); ++li) {
        const std::uint32_t meet =
            plane.points_on_line(li).intersection_count(h.point_set);
        if (meet == 2)
            cls.secants.push_back(li);
        else if (meet == 0)
            cls.exterior.push_back(li);
        else
            throw std::invalid_argument("not a hyperoval");
    }
    return cls;
}

Design hyperoval_design_W(const Plane& plane, const Hyperoval& h) {
    const auto cls = classify_lines(plane, h);
    const std::uint32_t q = plane.field()->q();
    std::vector<std::int32_t> ext_index(plane.n_lines(), -1);
    for (std::uint32_t i = 0; i < cls.exterior.size(); ++i)
        ext_index[cls.exterior[i]] = std::int32_t(i);

    std::vector<Block> blocks;
    for (std::uint32_t pi = 0; pi < plane.n_points(); ++pi) {
        if (h.point_set.test(pi)) continue;
        Block blk(std::uint32_t(cls.exterior.size()));
        for (auto li : plane.lines_through_point(pi).points())
            if (ext_index[li] >= 0) blk.set(std::uint32_t(ext_index[li]));
        blocks.push_back(std::move(blk));
    }
    nlohmann::ordered_json source;
    source["construction"] = "hyperoval_W";
    source["q"] = q;
    return Design::make(std::uint32_t(cls.exterior.size()), q / 2,
                        std::move(blocks), std::move(source), plane.field());
}

Design hyperoval_design_S(const Plane& plane, const Hyperoval& h) {
    const auto cls = classify_lines(plane, h);
    const std::uint32_t q = plane.field()->q();
    std::vector<bool> is_secant(plane.n_lines(), false);
    for (auto li : cls.secants) is_secant[li] = true;

    // compact indexing of the q^2 - 1 exterior points
    std::vector<std::uint32_t> ext_points;
    std::vector<std::int32_t> idx(plane.n_points(), -1);
    for (std::uint32_t pi = 0; pi < plane.n_points(); ++pi)
        if (!h.point_set.test(pi)) {
            idx[pi] = std::int32_t(ext_points.size());
            ext_points.push_back(pi);
        }

    const std::uint32_t v = std::uint32_t(ext_points.size());
    std::vector<Block> blocks(v, Block(v));
    for (std::uint32_t i = 0; i < v; ++i) {
        blocks[i].set(i);  // the defining point belongs to its block
        for (std::uint32_t j = i + 1; j < v; ++j) {
            if (is_secant[plane.line_through(ext_points[i], ext_points[j])]) {
                blocks[i].set(j);
                blocks[j].set(i);
            }
        }
    }
    nlohmann::ordered_json source;
    source["construction"] = "hyperoval_S";
    source["q"] = q;
    return Design::make(v, q * q / 2 - 1, std::move(blocks), std::move(source),
                        plane.field());
}

}  // namespace opdlab
