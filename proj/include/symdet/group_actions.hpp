#pragma once

#include <string>
#include <utility>
#include <vector>

#include "symdet/geometry.hpp"

namespace symdet {

enum class ElementKind { rotation, reflection };

/// An element of the dihedral group D_n acting on the plane.
///
/// Rotations r_k multiply by exp(2*pi*i*k/n). Reflections s_k = r_k o s_0,
/// where s_0 is reflection across the x-axis, i.e. s_k z = exp(2*pi*i*k/n) conj(z).
/// The order n = 1 gives the two-element group {e, s_0}.
class GroupElement {
public:
    /// Throws ValidationError unless n >= 1 and 0 <= k < n.
    GroupElement(ElementKind kind, int k, int n);

    static GroupElement identity(int n) { return {ElementKind::rotation, 0, n}; }
    static GroupElement rotation(int k, int n) { return {ElementKind::rotation, k, n}; }
    static GroupElement reflection(int k, int n) { return {ElementKind::reflection, k, n}; }

    ElementKind kind() const noexcept { return kind_; }
    int index() const noexcept { return k_; }
    int order() const noexcept { return n_; }
    bool is_identity() const noexcept { return kind_ == ElementKind::rotation && k_ == 0; }

    Point apply(Point p) const noexcept;
    GroupElement inverse() const;

    /// "r<k>" or "s<k>".
    std::string label() const;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;

private:
    ElementKind kind_;
    int k_;
    int n_;
};

/// Composition `a * b`: apply b first, then a. Throws SizeMismatchError on differing orders.
GroupElement operator*(const GroupElement& a, const GroupElement& b);

/// Returns g^-1 h g in canonical form.
GroupElement conjugate_element(const GroupElement& g, const GroupElement& h);

/// Applies g to every point, preserving order.
PointCloud apply_element(const GroupElement& g, const PointCloud& cloud);

class DihedralGroup {
public:
    explicit DihedralGroup(int n);

    int n() const noexcept { return n_; }
    int order() const noexcept { return 2 * n_; }

    /// All 2n elements: rotations r_0..r_{n-1}, then reflections s_0..s_{n-1}.
    std::vector<GroupElement> elements() const;

    /// Whether the planar map of `g` (of any order) belongs to this group.
    bool contains(const GroupElement& g) const noexcept;

    /// Canonical embedding D_m <= D_n (shared s_0 axis) holds iff m divides n.
    bool is_subgroup_of(const DihedralGroup& larger) const noexcept { return larger.n_ % n_ == 0; }

private:
    int n_;
};

inline std::vector<GroupElement> elements(const DihedralGroup& group) { return group.elements(); }

struct RadiusRange {
    double min = 0.5;
    double max = 1.5;
};

/// Uniform (by area) samples from the sector {rho e^{i theta}: rho in [min, max], theta in [0, pi/n)}.
PointCloud sample_fundamental_domain(int n, std::size_t count, RadiusRange radii, Rng& rng);

/// Images of `motif` under every element of D_n, concatenated in enumeration order.
PointCloud replicate_motif(const PointCloud& motif, int n);

}  // namespace symdet
