// SPDX-License-Identifier: Apache-2.0
//
// csi-prism — massive-MIMO air-to-ground channel analysis toolkit
// Copyright (C) 2026 The csi-prism authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "csiprism/tensor_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace csiprism {

namespace {

// On-disk integers and floats are little-endian; every supported target here
// is little-endian, so plain memcpy round-trips the representation.
static_assert(std::endian::native == std::endian::little, "CSIT I/O assumes little-endian host");

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v;
    std::memcpy(&v, p, 4);
    return v;
}

double get_f64(const unsigned char* p) {
    double v;
    std::memcpy(&v, p, 8);
    return v;
}

void put_u32(std::string& out, std::uint32_t v) { out.append(reinterpret_cast<const char*>(&v), 4); }
void put_f64(std::string& out, double v) { out.append(reinterpret_cast<const char*>(&v), 8); }

std::string index_string(std::size_t flat, std::size_t n_ant, std::size_t n_sub) {
    const std::size_t f = flat % n_sub;
    const std::size_t n = (flat / n_sub) % n_ant;
    const std::size_t t = flat / (n_sub * n_ant);
    std::ostringstream os;
    os << "(t=" << t << ", n=" << n << ", f=" << f << ")";
    return os.str();
}

} // namespace

void csi_tensor::validate() const {
    if (n_time < 1 || n_ant < 1 || n_sub < 2)
        throw format_error("csi tensor: dimensions must satisfy n_time >= 1, n_ant >= 1, n_sub >= 2");
    if (data.size() != n_time * n_ant * n_sub)
        throw truncation_error("csi tensor: payload length does not match declared dimensions");
    if (!(dt > 0.0))
        throw format_error("csi tensor: dt must be positive");
    if (!(bw > 0.0))
        throw format_error("csi tensor: bw must be positive");
    if (!(f_c > bw / 2.0))
        throw format_error("csi tensor: f_c must exceed bw/2");
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!std::isfinite(data[i].real()) || !std::isfinite(data[i].imag()))
            throw data_error("csi tensor: non-finite gain at " + index_string(i, n_ant, n_sub));
    }
}

csit_reader::csit_reader(const std::filesystem::path& path) : path_(path) {
    std::FILE* f = std::fopen(path.string().c_str(), "rb");
    if (f == nullptr)
        throw format_error("cannot open CSI file: " + path.string());
    file_.reset(f);

    std::array<unsigned char, csit_header_bytes> hdr{};
    if (std::fread(hdr.data(), 1, hdr.size(), f) != hdr.size())
        throw format_error("CSI file too short for header: " + path.string());
    if (std::memcmp(hdr.data(), csit_magic, sizeof(csit_magic)) != 0)
        throw format_error("bad CSIT magic in " + path.string());

    header_.n_time = get_u32(hdr.data() + 5);
    header_.n_ant = get_u32(hdr.data() + 9);
    header_.n_sub = get_u32(hdr.data() + 13);
    header_.dt = get_f64(hdr.data() + 17);
    header_.f_c = get_f64(hdr.data() + 25);
    header_.bw = get_f64(hdr.data() + 33);

    if (header_.n_time < 1 || header_.n_ant < 1 || header_.n_sub < 2)
        throw format_error("CSIT header: invalid dimensions in " + path.string());
    if (!(header_.dt > 0.0) || !(header_.bw > 0.0) || !(header_.f_c > header_.bw / 2.0))
        throw format_error("CSIT header: invalid physical metadata in " + path.string());

    // Declared payload must be present.
    std::fseek(f, 0, SEEK_END);
    const auto file_bytes = static_cast<std::size_t>(std::ftell(f));
    const std::size_t need =
        csit_header_bytes + header_.n_time * header_.n_ant * header_.n_sub * 8;
    if (file_bytes < need)
        throw truncation_error("CSIT payload truncated: " + path.string() + " has " +
                               std::to_string(file_bytes) + " bytes, expected " +
                               std::to_string(need));
}

csi_tensor csit_reader::read_window(std::size_t t0, std::size_t w) {
    if (w < 1 || t0 + w > header_.n_time)
        throw index_error("read_window: [" + std::to_string(t0) + ", " + std::to_string(t0 + w) +
                          ") outside time axis of length " + std::to_string(header_.n_time));
    csi_tensor out;
    out.n_time = w;
    out.n_ant = header_.n_ant;
    out.n_sub = header_.n_sub;
    out.dt = header_.dt;
    out.f_c = header_.f_c;
    out.bw = header_.bw;

    const std::size_t per_snapshot = header_.n_ant * header_.n_sub;
    out.data.resize(w * per_snapshot);

    const auto offset = static_cast<long>(csit_header_bytes + t0 * per_snapshot * 8);
    if (std::fseek(file_.get(), offset, SEEK_SET) != 0)
        throw truncation_error("read_window: seek failed in " + path_.string());
    const std::size_t want = out.data.size();
    if (std::fread(out.data.data(), 8, want, file_.get()) != want)
        throw truncation_error("read_window: short read in " + path_.string());

    for (std::size_t i = 0; i < out.data.size(); ++i) {
        if (!std::isfinite(out.data[i].real()) || !std::isfinite(out.data[i].imag())) {
            const std::size_t flat = t0 * per_snapshot + i;
            throw data_error("non-finite gain at " + index_string(flat, out.n_ant, out.n_sub) +
                             " in " + path_.string());
        }
    }
    return out;
}

csi_tensor load_csi(const std::filesystem::path& path) {
    csit_reader r(path);
    return r.read_window(0, r.n_time());
}

void write_csi(const std::filesystem::path& path, tensor_view t) {
    if (t.n_time < 1 || t.n_ant < 1 || t.n_sub < 2)
        throw format_error("write_csi: invalid dimensions");
    if (!(t.dt > 0.0) || !(t.bw > 0.0) || !(t.f_c > t.bw / 2.0))
        throw format_error("write_csi: invalid physical metadata");

    std::string hdr;
    hdr.reserve(csit_header_bytes);
    hdr.append(csit_magic, sizeof(csit_magic));
    put_u32(hdr, static_cast<std::uint32_t>(t.n_time));
    put_u32(hdr, static_cast<std::uint32_t>(t.n_ant));
    put_u32(hdr, static_cast<std::uint32_t>(t.n_sub));
    put_f64(hdr, t.dt);
    put_f64(hdr, t.f_c);
    put_f64(hdr, t.bw);

    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (f == nullptr)
        throw error("write_csi: cannot open " + path.string());
    const std::unique_ptr<std::FILE, int (*)(std::FILE*)> guard(f, &std::fclose);

    if (std::fwrite(hdr.data(), 1, hdr.size(), f) != hdr.size())
        throw error("write_csi: header write failed for " + path.string());

    const std::size_t total = t.size();
    for (std::size_t i = 0; i < total; ++i) {
        if (!std::isfinite(t.data[i].real()) || !std::isfinite(t.data[i].imag()))
            throw data_error("write_csi: non-finite gain at " +
                             index_string(i, t.n_ant, t.n_sub));
    }
    if (std::fwrite(t.data, 8, total, f) != total)
        throw error("write_csi: payload write failed for " + path.string());
}

void trajectory_log::validate() const {
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (i > 0 && !(r.t > records[i - 1].t))
            throw order_error("trajectory: timestamps not strictly increasing at row " +
                              std::to_string(i));
        if (std::abs(r.lat) > 90.0)
            throw range_error("trajectory: |lat| > 90 at row " + std::to_string(i));
        if (std::abs(r.lon) > 180.0)
            throw range_error("trajectory: |lon| > 180 at row " + std::to_string(i));
        if (std::abs(r.pitch) > 90.0)
            throw range_error("trajectory: |pitch| > 90 at row " + std::to_string(i));
        if (std::abs(r.roll) > 180.0)
            throw range_error("trajectory: |roll| > 180 at row " + std::to_string(i));
    }
}

namespace {
constexpr const char* traj_header = "t_s,lat_deg,lon_deg,alt_asl_m,pitch_deg,roll_deg,yaw_deg";
}

trajectory_log load_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open trajectory file: " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw format_error("empty trajectory file: " + path.string());
    // Tolerate a UTF-8 BOM and trailing CR.
    if (line.rfind("\xEF\xBB\xBF", 0) == 0)
        line.erase(0, 3);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != traj_header)
        throw format_error("trajectory header mismatch in " + path.string() + ": got \"" + line +
                           "\"");

    trajectory_log log;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        trajectory_record rec;
        double* fields[7] = {&rec.t,     &rec.lat,  &rec.lon, &rec.alt_asl,
                             &rec.pitch, &rec.roll, &rec.yaw};
        const char* p = line.c_str();
        for (int k = 0; k < 7; ++k) {
            char* end = nullptr;
            *fields[k] = std::strtod(p, &end);
            if (end == p)
                throw format_error("trajectory: unparsable field " + std::to_string(k) +
                                   " at row " + std::to_string(row) + " in " + path.string());
            p = end;
            if (k < 6) {
                if (*p != ',')
                    throw format_error("trajectory: expected ',' at row " + std::to_string(row) +
                                       " in " + path.string());
                ++p;
            }
        }
        log.records.push_back(rec);
        ++row;
    }
    log.validate();
    return log;
}

void write_trajectory(const std::filesystem::path& path, const trajectory_log& log) {
    log.validate();
    std::ofstream out(path);
    if (!out)
        throw error("write_trajectory: cannot open " + path.string());
    out << traj_header << "\n";
    char buf[256];
    for (const auto& r : log.records) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", r.t, r.lat,
                      r.lon, r.alt_asl, r.pitch, r.roll, r.yaw);
        out << buf;
    }
}

tensor_view slice_window(tensor_view t, std::size_t t0, std::size_t w) {
    if (w < 1 || t0 + w > t.n_time)
        throw index_error("slice_window: [" + std::to_string(t0) + ", " + std::to_string(t0 + w) +
                          ") outside time axis of length " + std::to_string(t.n_time));
    tensor_view out = t;
    out.data = t.data + t0 * t.n_ant * t.n_sub;
    out.n_time = w;
    return out;
}

} // namespace csiprism
