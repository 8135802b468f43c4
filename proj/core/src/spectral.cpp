#include "spcell/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <fftw3.h>

namespace spcell {

namespace {

// FFTW plan cache.  Plans are created with FFTW_ESTIMATE | FFTW_UNALIGNED so
// they are deterministic and usable on any buffer via the new-array execute
// interface; creation is serialized, execution is thread-safe.
class FftPlans {
public:
    static FftPlans& instance() {
        static FftPlans p;
        return p;
    }

    void execute(const std::array<int, 3>& n, int sign, const Complex* in, Complex* out) {
        fftw_plan plan = get(n, sign);
        fftw_execute_dft(plan,
                         reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

private:
    fftw_plan get(const std::array<int, 3>& n, int sign) {
        std::scoped_lock lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        const std::size_t total = static_cast<std::size_t>(n[0]) * n[1] * n[2];
        std::vector<Complex> scratch_in(total), scratch_out(total);
        fftw_plan plan = fftw_plan_dft_3d(n[0], n[1], n[2],
                                          reinterpret_cast<fftw_complex*>(scratch_in.data()),
                                          reinterpret_cast<fftw_complex*>(scratch_out.data()),
                                          sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    std::mutex mutex_;
    std::map<std::pair<std::array<int, 3>, int>, fftw_plan> plans_;
};

} // namespace

SpectrumField forward(const ScalarField& f) {
    const Cell& cell = *f.cell();
    SpectrumField out(f.cell());
    // analysis kernel e^{+i k.x} = e^{+2 pi i m.p/n} is FFTW's BACKWARD sign
    FftPlans::instance().execute(cell.grid(), FFTW_BACKWARD, f.data().data(), out.data().data());
    const double scale = 1.0 / std::sqrt(static_cast<double>(cell.size()));
    for (Complex& z : out.data()) z *= scale;
    return out;
}

ScalarField inverse(const SpectrumField& F) {
    const Cell& cell = *F.cell();
    ScalarField out(F.cell());
    FftPlans::instance().execute(cell.grid(), FFTW_FORWARD, F.data().data(), out.data().data());
    const double scale = 1.0 / std::sqrt(static_cast<double>(cell.size()));
    for (Complex& z : out.data()) z *= scale;
    return out;
}

SpectrumField apply_multiplier(const SpectrumField& F,
                               const std::function<double(const DualMode&)>& symbol) {
    SpectrumField out(F.cell());
    const auto& modes = F.cell()->modes();
    for (std::size_t i = 0; i < modes.size(); ++i) out[i] = F[i] * symbol(modes[i]);
    return out;
}

double dc_integral(const SpectrumField& F) {
    const Cell& cell = *F.cell();
    return (F[0] * cell.volume() / std::sqrt(static_cast<double>(cell.size()))).real();
}

void require_neutral(const ScalarField& rho, double tol) {
    const double defect = std::abs(rho.integral());
    const double scale = std::max(1.0, rho.abs_integral());
    if (defect > tol * scale)
        throw NonNeutral("density has net charge " + std::to_string(defect) +
                         " per cell (tolerance " + std::to_string(tol * scale) + ")");
}

namespace {

ScalarField even_inverse_multiplier(const ScalarField& rho, double tol, bool sqrt_symbol) {
    require_neutral(rho, tol);
    const bool was_real = rho.real_hint();
    SpectrumField F = forward(rho);
    const auto& modes = F.cell()->modes();
    F[0] = Complex(0.0, 0.0);
    for (std::size_t i = 1; i < modes.size(); ++i)
        F[i] /= sqrt_symbol ? std::sqrt(modes[i].k2) : modes[i].k2;
    ScalarField out = inverse(F);
    out.set_real_hint(was_real);
    return out;
}

} // namespace

ScalarField inv_laplacian(const ScalarField& rho, double tol) {
    return even_inverse_multiplier(rho, tol, false);
}

ScalarField lambda_op(const ScalarField& rho, double tol) {
    return even_inverse_multiplier(rho, tol, true);
}

ScalarField neg_laplacian(const ScalarField& f) {
    const bool was_real = f.real_hint();
    SpectrumField F = forward(f);
    const auto& modes = F.cell()->modes();
    for (std::size_t i = 0; i < modes.size(); ++i) F[i] *= modes[i].k2;
    ScalarField out = inverse(F);
    out.set_real_hint(was_real);
    return out;
}

SpectrumField inv_laplacian_spectrum(const SpectrumField& rho_hat) {
    SpectrumField out(rho_hat.cell());
    const auto& modes = rho_hat.cell()->modes();
    for (std::size_t i = 1; i < modes.size(); ++i) out[i] = rho_hat[i] / modes[i].k2;
    return out;
}

std::array<ScalarField, 3> grad(const ScalarField& f) {
    const CellPtr& cell = f.cell();
    const bool was_real = f.real_hint();
    SpectrumField F = forward(f);
    const auto& modes = cell->modes();
    const auto& n = cell->grid();
    std::array<ScalarField, 3> out{ScalarField(cell), ScalarField(cell), ScalarField(cell)};
    SpectrumField G(cell);
    for (int axis = 0; axis < 3; ++axis) {
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const auto& m = modes[i];
            // odd symbol: the Nyquist row of the differentiated axis is
            // self-paired and is dropped
            const bool nyquist = m.index[axis] == -n[axis] / 2;
            G[i] = nyquist ? Complex(0.0, 0.0) : Complex(0.0, -m.k[axis]) * F[i];
        }
        out[axis] = inverse(G);
        out[axis].set_real_hint(was_real);
    }
    return out;
}

void hermitian_symmetrize(SpectrumField& F) {
    const auto& n = F.cell()->grid();
    auto flat = [&](int p1, int p2, int p3) {
        return (static_cast<std::size_t>(p1) * n[1] + p2) * n[2] + p3;
    };
    for (int p1 = 0; p1 < n[0]; ++p1) {
        const int q1 = (n[0] - p1) % n[0];
        for (int p2 = 0; p2 < n[1]; ++p2) {
            const int q2 = (n[1] - p2) % n[1];
            for (int p3 = 0; p3 < n[2]; ++p3) {
                const int q3 = (n[2] - p3) % n[2];
                const std::size_t i = flat(p1, p2, p3);
                const std::size_t j = flat(q1, q2, q3);
                if (j < i) continue;
                const Complex a = F[i];
                const Complex b = F[j];
                F[i] = 0.5 * (a + std::conj(b));
                F[j] = 0.5 * (b + std::conj(a));
            }
        }
    }
}

} // namespace spcell
