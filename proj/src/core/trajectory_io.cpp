#include "core/trajectory_io.hpp"

#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace fracwave {

namespace fs = std::filesystem;

namespace {

std::uint64_t to_little(std::uint64_t v)
{
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        std::uint64_t r = 0;
        for (int i = 0; i < 8; ++i) {
            r = (r << 8) | ((v >> (8 * i)) & 0xffu);
        }
        return r;
    }
}

void put_double(std::string& out, double x)
{
    const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(x));
    char buf[8];
    std::memcpy(buf, &bits, 8);
    out.append(buf, 8);
}

double get_double(const char* p)
{
    std::uint64_t bits = 0;
    std::memcpy(&bits, p, 8);
    return std::bit_cast<double>(to_little(bits));
}

fs::path temp_sibling(const fs::path& path)
{
    static std::atomic<unsigned> counter{0};
    std::ostringstream name;
    name << path.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
         << counter.fetch_add(1);
    return path.parent_path() / name.str();
}

std::uint64_t fnv1a(const char* data, std::size_t n, std::uint64_t h = 1469598103934665603ull)
{
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 1099511628211ull;
    }
    return h;
}

template <class Writer>
void write_atomic_with(const fs::path& path, Writer&& writer)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    const fs::path tmp = temp_sibling(path);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        writer(out);
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename into " + path.string());
    }
}

}  // namespace

void write_file_atomic(const fs::path& path, const std::string& contents)
{
    write_atomic_with(path, [&](std::ostream& out) {
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    });
}

void dump_trajectory(const Trajectory& traj, const fs::path& path)
{
    if (!traj.full()) {
        throw ArgumentError("dump_trajectory: trajectory does not hold every slab");
    }
    const std::size_t J = traj.steps();
    write_atomic_with(path, [&](std::ostream& out) {
        std::string bytes;
        put_double(bytes, traj.alpha());
        put_double(bytes, static_cast<double>(traj.space().cells()));
        put_double(bytes, static_cast<double>(J));
        put_double(bytes, traj.time().final_time());
        for (std::size_t j = 0; j <= J; ++j) {
            for (double v : traj.value(j)) {
                put_double(bytes, v);
            }
            if (bytes.size() >= (1u << 20) || j == J) {
                out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
                bytes.clear();
            }
        }
    });
}

Trajectory load_trajectory(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    char header[32];
    if (!in.read(header, 32)) {
        throw IoError("trajectory dump too short: " + path.string());
    }
    const double alpha = get_double(header);
    const double cells = get_double(header + 8);
    const double steps = get_double(header + 16);
    const double T = get_double(header + 24);
    if (!(cells >= 2.0) || !(steps >= 1.0) || cells != std::floor(cells) || steps != std::floor(steps) || !(T > 0.0)) {
        throw IoError("malformed trajectory header: " + path.string());
    }
    const SpaceGrid1D sgrid(static_cast<std::size_t>(cells));
    const TimeGrid tgrid(T, static_cast<std::size_t>(steps));
    const std::size_t N = sgrid.interior();
    const std::size_t J = tgrid.steps();
    std::error_code ec;
    const auto size = fs::file_size(path, ec);
    if (ec || size != 8 * (4 + N * (J + 1))) {
        throw IoError("trajectory dump size does not match its header: " + path.string());
    }
    Trajectory traj(alpha, sgrid, tgrid);
    const TriDiagMatrix mass = assemble_mass(sgrid);
    std::vector<double> norms(J + 1);
    std::string row(8 * N, '\0');
    for (std::size_t j = 0; j <= J; ++j) {
        if (!in.read(row.data(), static_cast<std::streamsize>(row.size()))) {
            throw IoError("trajectory dump truncated: " + path.string());
        }
        std::span<double> v = traj.value(j);
        for (std::size_t i = 0; i < N; ++i) {
            v[i] = get_double(row.data() + 8 * i);
        }
        norms[j] = l2_norm(v, mass);
    }
    traj.set_norms(std::move(norms));
    return traj;
}

std::uint64_t file_checksum(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::uint64_t h = 1469598103934665603ull;
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        h = fnv1a(buf.data(), static_cast<std::size_t>(in.gcount()), h);
    }
    return h;
}

void write_manifest(const Manifest& manifest, const fs::path& path)
{
    nlohmann::json j;
    j["experiment"] = manifest.experiment;
    j["alpha"] = manifest.alpha;
    j["m"] = manifest.m;
    j["n"] = manifest.n;
    j["checksum"] = manifest.checksum;
    j["bytes"] = manifest.bytes;
    write_file_atomic(path, j.dump(2) + "\n");
}

Manifest read_manifest(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    try {
        const nlohmann::json j = nlohmann::json::parse(in);
        Manifest m;
        m.experiment = j.at("experiment").get<int>();
        m.alpha = j.at("alpha").get<double>();
        m.m = j.at("m").get<int>();
        m.n = j.at("n").get<int>();
        m.checksum = j.at("checksum").get<std::uint64_t>();
        m.bytes = j.at("bytes").get<std::uint64_t>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed manifest " + path.string() + ": " + e.what());
    }
}

}  // namespace fracwave
