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

#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <doctest.h>

#include "csiprism/errors.hpp"
#include "csiprism/tensor_io.hpp"
#include "helpers.hpp"

using namespace csiprism;

namespace {

trajectory_log small_log() {
    trajectory_log log;
    for (int i = 0; i < 5; ++i) {
        trajectory_record r;
        r.t = 10.0 + 0.2 * i;
        r.lat = 50.862 + 1e-5 * i;
        r.lon = 4.6855 - 2e-5 * i;
        r.alt_asl = 60.0 + 0.5 * i;
        r.pitch = 1.0 + 0.1 * i;
        r.roll = -0.5;
        r.yaw = 45.0;
        log.records.push_back(r);
    }
    return log;
}

} // namespace

TEST_CASE("csit write/read round-trips header and payload exactly") {
    testutil::temp_dir tmp("io");
    const auto t = testutil::random_tensor(7, 3, 5, 99, 2e-3, 2.61e9, 18e6);
    const auto path = tmp.file("a.csit");
    write_csi(path, t);

    // Header layout check straight off the bytes: magic, dims, metadata.
    const std::string bytes = testutil::read_all(path);
    REQUIRE(bytes.size() == csit_header_bytes + t.data.size() * 8);
    CHECK(std::memcmp(bytes.data(), csit_magic, 5) == 0);
    std::uint32_t n_time = 0;
    std::memcpy(&n_time, bytes.data() + 5, 4);
    CHECK(n_time == 7);

    const auto back = load_csi(path);
    CHECK(back.n_time == t.n_time);
    CHECK(back.n_ant == t.n_ant);
    CHECK(back.n_sub == t.n_sub);
    CHECK(back.dt == t.dt);
    CHECK(back.f_c == t.f_c);
    CHECK(back.bw == t.bw);
    CHECK(back.data == t.data);
}

TEST_CASE("reader loads windows with inherited metadata") {
    testutil::temp_dir tmp("io");
    const auto t = testutil::random_tensor(10, 2, 4, 5);
    const auto path = tmp.file("w.csit");
    write_csi(path, t);

    csit_reader reader(path);
    CHECK(reader.n_time() == 10);
    CHECK(reader.n_ant() == 2);
    CHECK(reader.n_sub() == 4);

    const auto win = reader.read_window(3, 4);
    CHECK(win.n_time == 4);
    CHECK(win.dt == t.dt);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t n = 0; n < 2; ++n)
            for (std::size_t f = 0; f < 4; ++f)
                CHECK(win.at(k, n, f) == t.at(3 + k, n, f));

    CHECK_THROWS_AS(reader.read_window(8, 4), index_error);
    CHECK_THROWS_AS(reader.read_window(0, 11), index_error);
}

TEST_CASE("bad magic is rejected as a format error") {
    testutil::temp_dir tmp("io");
    const auto t = testutil::random_tensor(2, 1, 2, 1);
    const auto path = tmp.file("bad.csit");
    write_csi(path, t);

    auto bytes = testutil::read_all(path);
    bytes[0] = 'X';
    std::ofstream(path, std::ios::binary).write(bytes.data(), bytes.size());
    CHECK_THROWS_AS(load_csi(path), format_error);
}

TEST_CASE("short payload is rejected as truncation") {
    testutil::temp_dir tmp("io");
    const auto t = testutil::random_tensor(4, 2, 3, 1);
    const auto path = tmp.file("short.csit");
    write_csi(path, t);

    auto bytes = testutil::read_all(path);
    bytes.resize(bytes.size() - 8);
    std::ofstream(path, std::ios::binary).write(bytes.data(), bytes.size());
    CHECK_THROWS_AS(load_csi(path), truncation_error);
}

TEST_CASE("non-finite payload values are rejected with their location") {
    testutil::temp_dir tmp("io");
    const auto t = testutil::random_tensor(3, 2, 2, 1);
    const auto path = tmp.file("nan.csit");
    write_csi(path, t);

    auto bytes = testutil::read_all(path);
    const float bad = std::numeric_limits<float>::quiet_NaN();
    // Poison the real part of sample (t=1, n=0, f=1): flat index 5.
    std::memcpy(bytes.data() + csit_header_bytes + 5 * 8, &bad, 4);
    std::ofstream(path, std::ios::binary).write(bytes.data(), bytes.size());

    try {
        load_csi(path);
        FAIL("expected data_error");
    } catch (const data_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("t=1") != std::string::npos);
        CHECK(msg.find("f=1") != std::string::npos);
    }
}

TEST_CASE("writer refuses non-finite samples") {
    testutil::temp_dir tmp("io");
    auto t = testutil::random_tensor(2, 1, 2, 1);
    t.data[1] = cf32(std::numeric_limits<float>::infinity(), 0.0f);
    CHECK_THROWS_AS(write_csi(tmp.file("x.csit"), t), data_error);
}

TEST_CASE("trajectory csv round-trips") {
    testutil::temp_dir tmp("io");
    const auto log = small_log();
    const auto path = tmp.file("traj.csv");
    write_trajectory(path, log);

    // Exact header line contract.
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t_s,lat_deg,lon_deg,alt_asl_m,pitch_deg,roll_deg,yaw_deg");

    const auto back = load_trajectory(path);
    REQUIRE(back.records.size() == log.records.size());
    for (std::size_t i = 0; i < back.records.size(); ++i) {
        CHECK(back.records[i].t == doctest::Approx(log.records[i].t).epsilon(1e-12));
        CHECK(back.records[i].lat == doctest::Approx(log.records[i].lat).epsilon(1e-12));
        CHECK(back.records[i].lon == doctest::Approx(log.records[i].lon).epsilon(1e-12));
        CHECK(back.records[i].yaw == doctest::Approx(log.records[i].yaw).epsilon(1e-12));
    }
}

TEST_CASE("trajectory header and record invariants are enforced") {
    testutil::temp_dir tmp("io");

    const auto bad_header = tmp.file("h.csv");
    std::ofstream(bad_header) << "time,lat,lon\n1,2,3\n";
    CHECK_THROWS_AS(load_trajectory(bad_header), format_error);

    const auto bad_order = tmp.file("o.csv");
    std::ofstream(bad_order) << "t_s,lat_deg,lon_deg,alt_asl_m,pitch_deg,roll_deg,yaw_deg\n"
                                "1.0,50.0,4.0,60,0,0,0\n"
                                "1.0,50.0,4.0,60,0,0,0\n";
    CHECK_THROWS_AS(load_trajectory(bad_order), order_error);

    const auto bad_lat = tmp.file("l.csv");
    std::ofstream(bad_lat) << "t_s,lat_deg,lon_deg,alt_asl_m,pitch_deg,roll_deg,yaw_deg\n"
                              "1.0,95.0,4.0,60,0,0,0\n";
    CHECK_THROWS_AS(load_trajectory(bad_lat), range_error);
}

TEST_CASE("slice_window views the right samples without copying") {
    const auto t = testutil::random_tensor(6, 2, 3, 8);
    const tensor_view full(t);
    const auto win = slice_window(full, 2, 3);
    CHECK(win.n_time == 3);
    CHECK(win.data == full.data + full.index(2, 0, 0));
    CHECK(win.at(0, 1, 2) == t.at(2, 1, 2));
    CHECK_THROWS_AS(slice_window(full, 4, 3), index_error);
}
