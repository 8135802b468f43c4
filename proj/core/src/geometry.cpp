#include "spcell/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace spcell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string vec_to_string(const Vec3& v) {
    std::ostringstream os;
    os << "(" << v[0] << ", " << v[1] << ", " << v[2] << ")";
    return os.str();
}

} // namespace

CellPtr make_cell(int d, const std::vector<Vec3>& periods,
                  const std::vector<double>& trunc,
                  const std::array<int, 3>& grid) {
    if (d < 1 || d > 3)
        throw ValidationError("lattice dimension must be 1, 2 or 3, got " + std::to_string(d));
    if (static_cast<int>(periods.size()) != d)
        throw ValidationError("expected " + std::to_string(d) + " periods, got " +
                              std::to_string(periods.size()));
    if (static_cast<int>(trunc.size()) != 3 - d)
        throw BadTruncation("expected " + std::to_string(3 - d) + " truncation half-lengths, got " +
                            std::to_string(trunc.size()));
    for (double L : trunc)
        if (!(L > 0.0))
            throw BadTruncation("truncation half-length must be > 0, got " + std::to_string(L));
    for (int n : grid) {
        if (n < 2)
            throw BadGrid("grid counts must be >= 2, got " + std::to_string(n));
        if (n % 2 != 0)
            throw BadGrid("grid counts must be even, got " + std::to_string(n));
    }

    // Periods of a reduced-dimension lattice must not leak into the
    // truncated coordinate axes; skew cells are rejected, not reinterpreted.
    for (const Vec3& a : periods) {
        for (int axis = d; axis < 3; ++axis) {
            if (std::abs(a[axis]) > 1e-12 * std::max(1.0, a.norm()))
                throw DegenerateLattice("period " + vec_to_string(a) +
                                        " has a component along truncated axis " +
                                        std::to_string(axis + 1));
        }
    }

    auto cell = std::shared_ptr<Cell>(new Cell());
    cell->d_ = d;
    cell->grid_ = grid;
    cell->n_total_ = static_cast<std::size_t>(grid[0]) * grid[1] * grid[2];
    cell->periods_ = periods;
    cell->trunc_ = trunc;

    Mat3 box = Mat3::Zero();
    for (int i = 0; i < d; ++i) box.col(i) = periods[i];
    for (int i = d; i < 3; ++i) box(i, i) = 2.0 * trunc[i - d];

    double axis_norm_product = 1.0;
    for (int i = 0; i < 3; ++i) axis_norm_product *= box.col(i).norm();
    const double det = box.determinant();
    if (!(std::abs(det) > 1e-10 * axis_norm_product))
        throw DegenerateLattice("periods are linearly dependent (|det| = " + std::to_string(det) + ")");

    cell->box_ = box;
    cell->box_inv_ = box.inverse();
    cell->volume_ = std::abs(det);
    cell->dual_ = kTwoPi * box.inverse().transpose();

    cell->max_spacing_ = 0.0;
    cell->min_axis_len_ = std::numeric_limits<double>::max();
    for (int i = 0; i < 3; ++i) {
        const double len = box.col(i).norm();
        cell->max_spacing_ = std::max(cell->max_spacing_, len / grid[i]);
        cell->min_axis_len_ = std::min(cell->min_axis_len_, len);
    }

    cell->modes_.reserve(cell->n_total_);
    for (int p1 = 0; p1 < grid[0]; ++p1) {
        const int m1 = p1 < grid[0] / 2 ? p1 : p1 - grid[0];
        for (int p2 = 0; p2 < grid[1]; ++p2) {
            const int m2 = p2 < grid[1] / 2 ? p2 : p2 - grid[1];
            for (int p3 = 0; p3 < grid[2]; ++p3) {
                const int m3 = p3 < grid[2] / 2 ? p3 : p3 - grid[2];
                DualMode mode;
                mode.index = {m1, m2, m3};
                mode.k = m1 * cell->dual_.col(0) + m2 * cell->dual_.col(1) + m3 * cell->dual_.col(2);
                mode.k2 = (m1 == 0 && m2 == 0 && m3 == 0) ? 0.0 : mode.k.squaredNorm();
                cell->modes_.push_back(mode);
            }
        }
    }
    return cell;
}

double Cell::trunc_half_length(int axis) const {
    if (axis < d_ || axis >= 3)
        throw ValidationError("axis " + std::to_string(axis + 1) + " is not truncated");
    return trunc_[axis - d_];
}

Vec3 Cell::position(int p1, int p2, int p3) const {
    const Vec3 frac(static_cast<double>(p1) / grid_[0],
                    static_cast<double>(p2) / grid_[1],
                    static_cast<double>(p3) / grid_[2]);
    return box_ * frac;
}

Vec3 Cell::position(std::size_t flat) const {
    const int p3 = static_cast<int>(flat % grid_[2]);
    const int p2 = static_cast<int>((flat / grid_[2]) % grid_[1]);
    const int p1 = static_cast<int>(flat / (static_cast<std::size_t>(grid_[1]) * grid_[2]));
    return position(p1, p2, p3);
}

double Cell::signed_axis_coord(int axis, std::size_t flat) const {
    const double L = trunc_half_length(axis);
    int p = 0;
    if (axis == 2) p = static_cast<int>(flat % grid_[2]);
    else if (axis == 1) p = static_cast<int>((flat / grid_[2]) % grid_[1]);
    else p = static_cast<int>(flat / (static_cast<std::size_t>(grid_[1]) * grid_[2]));
    double t = static_cast<double>(p) / grid_[axis]; // in [0, 1)
    t -= std::round(t);                              // minimum image, [-1/2, 1/2)
    return t * 2.0 * L;
}

bool Cell::same_as(const Cell& other) const {
    if (this == &other) return true;
    return d_ == other.d_ && grid_ == other.grid_ && box_ == other.box_;
}

void require_same_cell(const CellPtr& a, const CellPtr& b) {
    if (!a || !b || !a->same_as(*b))
        throw CellMismatch("fields live on different cells");
}

} // namespace spcell
