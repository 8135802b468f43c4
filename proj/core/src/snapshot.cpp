#include "spcell/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace spcell {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

namespace {

constexpr char kMagic[6] = {'S', 'P', 'F', 'L', 'D', '1'};

void put_i64(std::ostream& os, std::int64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }

std::int64_t get_i64(std::istream& is) {
    std::int64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}
double get_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

} // namespace

void write_snapshot(const std::filesystem::path& path, const ScalarField& f) {
    const Cell& cell = *f.cell();
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os.write(kMagic, sizeof(kMagic));
        put_i64(os, cell.dim());
        for (int n : cell.grid()) put_i64(os, n);
        for (int i = 0; i < 3; ++i) {
            Vec3 a = i < cell.dim() ? cell.periods()[i] : Vec3::Zero();
            for (int j = 0; j < 3; ++j) put_f64(os, a[j]);
        }
        for (int i = 0; i < 3; ++i)
            put_f64(os, i < 3 - cell.dim() ? cell.trunc()[i] : 0.0);
        os.write(reinterpret_cast<const char*>(f.data().data()),
                 static_cast<std::streamsize>(f.size() * sizeof(Complex)));
        if (!os) throw Error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

ScalarField read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path.string());
    char magic[6];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw Error(path.string() + " is not an SPFLD1 snapshot");

    const int d = static_cast<int>(get_i64(is));
    std::array<int, 3> grid{};
    for (int& n : grid) n = static_cast<int>(get_i64(is));
    std::vector<Vec3> periods;
    for (int i = 0; i < 3; ++i) {
        Vec3 a;
        for (int j = 0; j < 3; ++j) a[j] = get_f64(is);
        if (i < d) periods.push_back(a);
    }
    std::vector<double> trunc;
    for (int i = 0; i < 3; ++i) {
        const double L = get_f64(is);
        if (i < 3 - d) trunc.push_back(L);
    }
    if (!is) throw Error("truncated SPFLD1 header in " + path.string());

    CellPtr cell = make_cell(d, periods, trunc, grid);
    ScalarField f(cell);
    is.read(reinterpret_cast<char*>(f.data().data()),
            static_cast<std::streamsize>(f.size() * sizeof(Complex)));
    if (!is) throw Error("truncated SPFLD1 payload in " + path.string());
    return f;
}

} // namespace spcell
