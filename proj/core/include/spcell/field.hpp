#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "spcell/geometry.hpp"

namespace spcell {

using Complex = std::complex<double>;

/**
 * Complex samples on the real-space grid of a cell.  The L2 inner product
 * and norm carry the quadrature weight volume/N, so ||f|| approximates the
 * continuum L2 norm over the cell.
 *
 * A field can carry a "real" hint; flagged fields keep imaginary parts at
 * or below 1e-12 of the maximum magnitude (checked by check_real()).
 */
class ScalarField {
public:
    explicit ScalarField(CellPtr cell)
        : cell_(std::move(cell)), v_(cell_->size(), Complex(0.0, 0.0)) {}

    static ScalarField from_function(CellPtr cell,
                                     const std::function<Complex(const Vec3&)>& f,
                                     bool real_valued = false) {
        ScalarField out(std::move(cell));
        const auto& c = *out.cell_;
        const auto& g = c.grid();
        std::size_t i = 0;
        for (int p1 = 0; p1 < g[0]; ++p1)
            for (int p2 = 0; p2 < g[1]; ++p2)
                for (int p3 = 0; p3 < g[2]; ++p3)
                    out.v_[i++] = f(c.position(p1, p2, p3));
        out.real_hint_ = real_valued;
        return out;
    }

    const CellPtr& cell() const { return cell_; }
    std::size_t size() const { return v_.size(); }
    Complex& operator[](std::size_t i) { return v_[i]; }
    const Complex& operator[](std::size_t i) const { return v_[i]; }
    std::vector<Complex>& data() { return v_; }
    const std::vector<Complex>& data() const { return v_; }

    double norm_sq() const {
        double s = 0.0;
        for (const Complex& z : v_) s += std::norm(z);
        return s * cell_->weight();
    }
    double norm() const { return std::sqrt(norm_sq()); }

    /// Hermitian inner product, conjugate-linear in *this*.
    Complex inner(const ScalarField& other) const {
        require_same_cell(cell_, other.cell_);
        Complex s(0.0, 0.0);
        for (std::size_t i = 0; i < v_.size(); ++i) s += std::conj(v_[i]) * other.v_[i];
        return s * cell_->weight();
    }

    Complex integral() const {
        Complex s(0.0, 0.0);
        for (const Complex& z : v_) s += z;
        return s * cell_->weight();
    }
    double abs_integral() const {
        double s = 0.0;
        for (const Complex& z : v_) s += std::abs(z);
        return s * cell_->weight();
    }
    double max_abs() const {
        double m = 0.0;
        for (const Complex& z : v_) m = std::max(m, std::abs(z));
        return m;
    }

    bool real_hint() const { return real_hint_; }
    void set_real_hint(bool h) { real_hint_ = h; }
    /// true if imaginary parts are at most tol * max magnitude
    bool check_real(double tol = 1e-12) const {
        double max_im = 0.0;
        for (const Complex& z : v_) max_im = std::max(max_im, std::abs(z.imag()));
        return max_im <= tol * std::max(max_abs(), 1e-300);
    }

    ScalarField& operator*=(Complex a) {
        for (Complex& z : v_) z *= a;
        if (a.imag() != 0.0) real_hint_ = false;
        return *this;
    }
    ScalarField& operator*=(double a) {
        for (Complex& z : v_) z *= a;
        return *this;
    }
    ScalarField& operator+=(const ScalarField& o) {
        require_same_cell(cell_, o.cell_);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
        real_hint_ = real_hint_ && o.real_hint_;
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        require_same_cell(cell_, o.cell_);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
        real_hint_ = real_hint_ && o.real_hint_;
        return *this;
    }
    /// *this += a * o
    ScalarField& axpy(Complex a, const ScalarField& o) {
        require_same_cell(cell_, o.cell_);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += a * o.v_[i];
        real_hint_ = false;
        return *this;
    }

private:
    CellPtr cell_;
    std::vector<Complex> v_;
    bool real_hint_ = false;
};

/** Complex coefficients on the dual modes of a cell, same flat layout as
 *  the grid.  Under the unitary transform the spectral L2 norm (with the
 *  same quadrature weight) equals the grid L2 norm. */
class SpectrumField {
public:
    explicit SpectrumField(CellPtr cell)
        : cell_(std::move(cell)), c_(cell_->size(), Complex(0.0, 0.0)) {}

    const CellPtr& cell() const { return cell_; }
    std::size_t size() const { return c_.size(); }
    Complex& operator[](std::size_t i) { return c_[i]; }
    const Complex& operator[](std::size_t i) const { return c_[i]; }
    std::vector<Complex>& data() { return c_; }
    const std::vector<Complex>& data() const { return c_; }

    double norm_sq() const {
        double s = 0.0;
        for (const Complex& z : c_) s += std::norm(z);
        return s * cell_->weight();
    }
    double norm() const { return std::sqrt(norm_sq()); }

    Complex inner(const SpectrumField& other) const {
        require_same_cell(cell_, other.cell_);
        Complex s(0.0, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) s += std::conj(c_[i]) * other.c_[i];
        return s * cell_->weight();
    }

private:
    CellPtr cell_;
    std::vector<Complex> c_;
};

inline ScalarField operator+(ScalarField a, const ScalarField& b) { a += b; return a; }
inline ScalarField operator-(ScalarField a, const ScalarField& b) { a -= b; return a; }
inline ScalarField operator*(Complex s, ScalarField f) { f *= s; return f; }
inline ScalarField operator*(double s, ScalarField f) { f *= s; return f; }

/// |f|^2 as a real field
inline ScalarField abs_squared(const ScalarField& f) {
    ScalarField out(f.cell());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = Complex(std::norm(f[i]), 0.0);
    out.set_real_hint(true);
    return out;
}

/// pointwise product a(x) b(x)
inline ScalarField pointwise(const ScalarField& a, const ScalarField& b) {
    require_same_cell(a.cell(), b.cell());
    ScalarField out(a.cell());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    out.set_real_hint(a.real_hint() && b.real_hint());
    return out;
}

} // namespace spcell
