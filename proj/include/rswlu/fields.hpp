#pragma once

#include <cstddef>
#include <vector>

#include "rswlu/mesh.hpp"

namespace rswlu {

/// Scalar field over one entity class of the mesh.  EdgeField values are the
/// coefficients of the stored edge orientation (i -> j with i < j); the
/// reversed coefficient is implied, never stored.
template <int Kind>
struct ScalarField {
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(size_t n, double fill = 0.0) : v(n, fill) {}

    size_t size() const { return v.size(); }
    double& operator[](size_t i) { return v[i]; }
    double operator[](size_t i) const { return v[i]; }

    ScalarField& operator+=(const ScalarField& o) {
        for (size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
        return *this;
    }
    ScalarField& operator*=(double s) {
        for (auto& x : v) x *= s;
        return *this;
    }
    /// this += s * o
    void add_scaled(double s, const ScalarField& o) {
        for (size_t i = 0; i < v.size(); ++i) v[i] += s * o.v[i];
    }
    /// this = a * x + b * y
    void set_lincomb(double a, const ScalarField& x, double b, const ScalarField& y) {
        v.resize(x.v.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = a * x.v[i] + b * y.v[i];
    }
};

using CellField = ScalarField<0>;
using EdgeField = ScalarField<1>;
using DualField = ScalarField<2>;

/// Tangent 3-vector per cell circumcenter.
struct CellVectorField {
    std::vector<Vec3> v;
    CellVectorField() = default;
    explicit CellVectorField(size_t n) : v(n, Vec3::Zero()) {}
    size_t size() const { return v.size(); }
    Vec3& operator[](size_t i) { return v[i]; }
    const Vec3& operator[](size_t i) const { return v[i]; }
};

/// Tangent 3-vector per dual vertex.
struct DualVectorField {
    std::vector<Vec3> v;
    DualVectorField() = default;
    explicit DualVectorField(size_t n) : v(n, Vec3::Zero()) {}
    size_t size() const { return v.size(); }
    Vec3& operator[](size_t i) { return v[i]; }
    const Vec3& operator[](size_t i) const { return v[i]; }
};

} // namespace rswlu
