#include "drough/driver_io.hpp"

#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace drough {

namespace {

constexpr char kMagic[5] = {'D', 'R', 'P', 'D', '1'};

void put_u64(std::vector<unsigned char>& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::vector<unsigned char>& buf, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    put_u64(buf, v);
}

struct Reader {
    const unsigned char* p;
    const unsigned char* end;
    std::uint64_t u64() {
        if (end - p < 8) throw std::runtime_error("driver cache: truncated file");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
        p += 8;
        return v;
    }
    double f64() {
        const std::uint64_t v = u64();
        double d;
        std::memcpy(&d, &v, 8);
        return d;
    }
};

void atomic_write(const std::string& path, const std::vector<unsigned char>& buf) {
    const std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw std::runtime_error("driver cache: cannot open " + tmp);
    const std::size_t written = std::fwrite(buf.data(), 1, buf.size(), f);
    std::fclose(f);
    if (written != buf.size()) {
        std::remove(tmp.c_str());
        throw std::runtime_error("driver cache: short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("driver cache: rename failed for " + path);
    }
}

}  // namespace

void save_driver(const DelayedRoughDriver& drv, const std::string& path) {
    std::vector<unsigned char> buf;
    buf.reserve(64 + 8 * (drv.path.size() + drv.cell_area.size() + drv.cell_delayed_area.size()));
    buf.insert(buf.end(), kMagic, kMagic + 5);
    put_u64(buf, static_cast<std::uint64_t>(drv.d));
    put_u64(buf, static_cast<std::uint64_t>(drv.grid.n));
    put_u64(buf, static_cast<std::uint64_t>(drv.grid.delay_steps));
    put_u64(buf, static_cast<std::uint64_t>(drv.subgrid_factor));
    put_u64(buf, static_cast<std::uint64_t>(drv.flavor));
    put_u64(buf, drv.seed);
    put_f64(buf, drv.grid.dt);
    put_f64(buf, drv.hurst);
    for (double v : drv.path) put_f64(buf, v);
    for (double v : drv.cell_area) put_f64(buf, v);
    for (double v : drv.cell_delayed_area) put_f64(buf, v);
    atomic_write(path, buf);
}

DelayedRoughDriver load_driver(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("driver cache: cannot open " + path);
    std::fseek(f, 0, SEEK_END);
    const long sz = std::ftell(f);
    std::fseek(f, 0, SEEK_SET);
    std::vector<unsigned char> buf(static_cast<std::size_t>(sz));
    const std::size_t got = std::fread(buf.data(), 1, buf.size(), f);
    std::fclose(f);
    if (got != buf.size()) throw std::runtime_error("driver cache: short read from " + path);
    if (buf.size() < 5 || std::memcmp(buf.data(), kMagic, 5) != 0)
        throw std::runtime_error("driver cache: bad magic in " + path);

    Reader r{buf.data() + 5, buf.data() + buf.size()};
    DelayedRoughDriver drv;
    drv.d = static_cast<int>(r.u64());
    const std::int64_t n = static_cast<std::int64_t>(r.u64());
    const std::int64_t m = static_cast<std::int64_t>(r.u64());
    drv.subgrid_factor = static_cast<std::int64_t>(r.u64());
    drv.flavor = static_cast<DriverFlavor>(r.u64());
    drv.seed = r.u64();
    const double dt = r.f64();
    drv.hurst = r.f64();
    if (drv.d < 1 || n < 2 || m < 0 || n - 1 - m < 0)
        throw std::runtime_error("driver cache: inconsistent header in " + path);
    drv.grid = Grid::over_ir(dt, m, n - 1 - m);

    const std::size_t dd = static_cast<std::size_t>(drv.d) * drv.d;
    drv.path.resize(static_cast<std::size_t>(n) * drv.d);
    for (auto& v : drv.path) v = r.f64();
    drv.cell_area.resize(static_cast<std::size_t>(n - 1) * dd);
    for (auto& v : drv.cell_area) v = r.f64();
    drv.cell_delayed_area.resize(static_cast<std::size_t>(n - 1 - m) * dd);
    for (auto& v : drv.cell_delayed_area) v = r.f64();
    if (r.p != r.end) throw std::runtime_error("driver cache: trailing bytes in " + path);
    drv.finalize();
    return drv;
}

}  // namespace drough
