#pragma once

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "spcell/errors.hpp"

namespace spcell {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/** One plane-wave mode of the dual lattice. */
struct DualMode {
    std::array<int, 3> index; ///< signed indices m_i in [-n_i/2, n_i/2)
    Vec3 k;                   ///< wavevector sum_i m_i b_i
    double k2;                ///< |k|^2, zero exactly for index (0,0,0)
};

class Cell;
using CellPtr = std::shared_ptr<const Cell>;

/**
 * Elementary cell of a d-dimensional lattice in R^3, sampled on a regular
 * grid.  For d = 3 the cell is spanned by three independent periods.  For
 * d < 3 the unbounded coordinate axes are truncated to [-L, L] and wrapped
 * periodically, so every case becomes an anisotropic torus: the box axes
 * are the d lattice periods plus (3-d) axes of length 2L along the
 * trailing coordinate directions.
 *
 * Immutable after construction; safe for concurrent reads.
 */
class Cell {
public:
    int dim() const { return d_; }
    const std::array<int, 3>& grid() const { return grid_; }
    std::size_t size() const { return n_total_; }
    double volume() const { return volume_; }
    /// quadrature weight of one grid sample, volume / (n1 n2 n3)
    double weight() const { return volume_ / static_cast<double>(n_total_); }

    const std::vector<Vec3>& periods() const { return periods_; }
    const std::vector<double>& trunc() const { return trunc_; }
    /// half-length of truncated axis `axis` (axis in [dim, 3))
    double trunc_half_length(int axis) const;

    /// column i is the i-th box axis (period, or 2L e_i for truncated axes)
    const Mat3& box_matrix() const { return box_; }
    /// dual generator b_i (column i of 2*pi*box^{-T})
    Vec3 dual_vector(int axis) const { return dual_.col(axis); }

    /// all n1*n2*n3 dual modes, row-major over grid indices with negative
    /// mode numbers in FFT wrap-around positions
    const std::vector<DualMode>& modes() const { return modes_; }

    std::size_t flat_index(int p1, int p2, int p3) const {
        return (static_cast<std::size_t>(p1) * grid_[1] + p2) * grid_[2] + p3;
    }
    /// Cartesian position of a grid sample
    Vec3 position(int p1, int p2, int p3) const;
    Vec3 position(std::size_t flat) const;

    Vec3 fractional_to_cartesian(const Vec3& frac) const { return box_ * frac; }
    Vec3 cartesian_to_fractional(const Vec3& x) const { return box_inv_ * x; }

    /// signed minimum-image coordinate along a truncated axis, in [-L, L)
    double signed_axis_coord(int axis, std::size_t flat) const;

    /// largest grid spacing |A_i| / n_i over all box axes
    double max_spacing() const { return max_spacing_; }
    /// smallest box axis length (periods and 2L alike)
    double min_axis_length() const { return min_axis_len_; }

    bool same_as(const Cell& other) const;

    friend CellPtr make_cell(int d, const std::vector<Vec3>& periods,
                             const std::vector<double>& trunc,
                             const std::array<int, 3>& grid);

private:
    Cell() = default;

    int d_ = 0;
    std::array<int, 3> grid_{};
    std::size_t n_total_ = 0;
    double volume_ = 0;
    std::vector<Vec3> periods_;
    std::vector<double> trunc_;
    Mat3 box_;      // columns: box axes
    Mat3 box_inv_;
    Mat3 dual_;     // columns: dual generators, dual_^T * box_ = 2*pi*I
    double max_spacing_ = 0;
    double min_axis_len_ = 0;
    std::vector<DualMode> modes_;
};

/**
 * Build a cell.
 *
 * Throws DegenerateLattice for dependent periods or periods that are not
 * orthogonal to the truncated coordinate axes (d < 3 requires the lattice
 * to lie in the leading coordinate plane), BadGrid for odd or < 2 sample
 * counts, BadTruncation for non-positive half-lengths.
 */
CellPtr make_cell(int d, const std::vector<Vec3>& periods,
                  const std::vector<double>& trunc,
                  const std::array<int, 3>& grid);

/// The full plane-wave mode set of the cell (alias of cell.modes()).
inline const std::vector<DualMode>& dual_modes(const Cell& cell) { return cell.modes(); }

/// Throws CellMismatch unless both cells describe the same sampled box.
void require_same_cell(const CellPtr& a, const CellPtr& b);

} // namespace spcell
