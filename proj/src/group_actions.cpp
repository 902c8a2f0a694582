#include "symdet/group_actions.hpp"

#include <cmath>
#include <numbers>

#include "symdet/error.hpp"

namespace symdet {

namespace {

int mod(int a, int n) {
    const int r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

GroupElement::GroupElement(ElementKind kind, int k, int n) : kind_(kind), k_(k), n_(n) {
    if (n < 1) throw ValidationError("dihedral order must be >= 1, got " + std::to_string(n));
    if (k < 0 || k >= n)
        throw ValidationError("element index " + std::to_string(k) + " outside [0, " + std::to_string(n - 1) + "]");
}

Point GroupElement::apply(Point p) const noexcept {
    if (kind_ == ElementKind::reflection) p.y = -p.y;
    if (k_ == 0) return p;
    const double angle = 2.0 * std::numbers::pi * k_ / n_;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

GroupElement GroupElement::inverse() const {
    if (kind_ == ElementKind::reflection) return *this;
    return rotation(mod(-k_, n_), n_);
}

std::string GroupElement::label() const {
    return (kind_ == ElementKind::rotation ? "r" : "s") + std::to_string(k_);
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (a.order() != b.order())
        throw SizeMismatchError("cannot compose elements of D_" + std::to_string(a.order()) + " and D_" +
                                std::to_string(b.order()));
    const int n = a.order();
    const bool ra = a.kind() == ElementKind::rotation;
    const bool rb = b.kind() == ElementKind::rotation;
    // r_a r_b = r_{a+b}, r_a s_b = s_{a+b}, s_a r_b = s_{a-b}, s_a s_b = r_{a-b}
    if (ra && rb) return GroupElement::rotation(mod(a.index() + b.index(), n), n);
    if (ra) return GroupElement::reflection(mod(a.index() + b.index(), n), n);
    if (rb) return GroupElement::reflection(mod(a.index() - b.index(), n), n);
    return GroupElement::rotation(mod(a.index() - b.index(), n), n);
}

GroupElement conjugate_element(const GroupElement& g, const GroupElement& h) {
    return g.inverse() * h * g;
}

PointCloud apply_element(const GroupElement& g, const PointCloud& cloud) {
    std::vector<Point> out;
    out.reserve(cloud.size());
    for (const auto& p : cloud) out.push_back(g.apply(p));
    return PointCloud(std::move(out));
}

DihedralGroup::DihedralGroup(int n) : n_(n) {
    if (n < 1) throw ValidationError("dihedral order must be >= 1, got " + std::to_string(n));
}

std::vector<GroupElement> DihedralGroup::elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(order()));
    for (int k = 0; k < n_; ++k) out.push_back(GroupElement::rotation(k, n_));
    for (int k = 0; k < n_; ++k) out.push_back(GroupElement::reflection(k, n_));
    return out;
}

bool DihedralGroup::contains(const GroupElement& g) const noexcept {
    // rotation angle 2*pi*k/m (or reflection axis pi*k/m) is a multiple of 2*pi/n (pi/n) iff k*n = 0 mod m
    return (static_cast<long long>(g.index()) * n_) % g.order() == 0;
}

PointCloud sample_fundamental_domain(int n, std::size_t count, RadiusRange radii, Rng& rng) {
    if (n < 1) throw ValidationError("dihedral order must be >= 1");
    if (count < 1) throw ValidationError("sample count must be >= 1");
    if (!(radii.min > 0.0) || !(radii.min <= radii.max) || !std::isfinite(radii.max))
        throw ValidationError("invalid radius range: need 0 < r_min <= r_max");

    std::uniform_real_distribution<double> area(radii.min * radii.min, radii.max * radii.max);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / n);
    std::vector<Point> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double rho = std::sqrt(area(rng));
        double theta = angle(rng);
        while (theta >= std::numbers::pi / n) theta = angle(rng);
        pts.push_back({rho * std::cos(theta), rho * std::sin(theta)});
    }
    return PointCloud(std::move(pts));
}

PointCloud replicate_motif(const PointCloud& motif, int n) {
    const DihedralGroup group(n);
    std::vector<Point> pts;
    pts.reserve(motif.size() * static_cast<std::size_t>(group.order()));
    for (const auto& g : group.elements())
        for (const auto& p : motif) pts.push_back(g.apply(p));
    return PointCloud(std::move(pts));
}

}  // namespace symdet
