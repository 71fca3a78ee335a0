/* Copyright 2026 The Rumour Mill Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "rumour_mill/service_config.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "rumour_mill/errors.hpp"
#include "test_support.hpp"

namespace rumour_mill {
namespace {

TEST(ServiceConfig, Defaults) {
  const ServiceConfig c = parse_service_config("{}", "/base");
  EXPECT_EQ(c.listen_host, "127.0.0.1");
  EXPECT_EQ(c.listen_port, 8080);
  EXPECT_EQ(c.backend, BackendKind::Builtin);
  EXPECT_EQ(c.cache_capacity, 8u);
  EXPECT_EQ(c.refill_target, 2u);
  EXPECT_EQ(c.refill_per_cycle, 5u);
  EXPECT_EQ(c.printer_width, 32u);
  EXPECT_FALSE(c.cache_path);
  EXPECT_FALSE(c.seed);
}

TEST(ServiceConfig, FullDocument) {
  const ServiceConfig c = parse_service_config(R"({
    "listen": "0.0.0.0:9000",
    "backend": "remote",
    "remote": {"base_url": "http://gpu-box:8090", "timeout_ms": 3000, "retries": 2,
               "health_interval_ms": 1000},
    "cache": {"path": "state/cache.journal", "capacity": 6},
    "printer": {"width": 42, "spool_dir": "/var/spool/mill"},
    "genre_map": "genres.conf",
    "data_dir": "data",
    "refill": {"interval_ms": 30000, "target": 3, "per_cycle": 4},
    "seed": 99,
    "static_dir": "ui/dist"
  })", "/etc/mill");
  EXPECT_EQ(c.listen_host, "0.0.0.0");
  EXPECT_EQ(c.listen_port, 9000);
  EXPECT_EQ(c.backend, BackendKind::Remote);
  EXPECT_EQ(c.remote.base_url, "http://gpu-box:8090");
  EXPECT_EQ(c.remote.timeout, std::chrono::milliseconds(3000));
  EXPECT_EQ(c.remote.retries, 2);
  EXPECT_EQ(c.remote.health_interval, std::chrono::milliseconds(1000));
  EXPECT_EQ(*c.cache_path, std::filesystem::path("/etc/mill/state/cache.journal"));
  EXPECT_EQ(c.cache_capacity, 6u);
  EXPECT_EQ(c.printer_width, 42u);
  EXPECT_EQ(*c.spool_dir, std::filesystem::path("/var/spool/mill"));
  EXPECT_EQ(*c.genre_map, std::filesystem::path("/etc/mill/genres.conf"));
  EXPECT_EQ(*c.data_dir, std::filesystem::path("/etc/mill/data"));
  EXPECT_EQ(c.refill_interval, std::chrono::milliseconds(30000));
  EXPECT_EQ(c.refill_target, 3u);
  EXPECT_EQ(c.refill_per_cycle, 4u);
  EXPECT_EQ(*c.seed, 99u);
  EXPECT_EQ(*c.static_dir, std::filesystem::path("/etc/mill/ui/dist"));
}

TEST(ServiceConfig, Errors) {
  for (const char* bad :
       {"[]", "{", R"({"listen": "nocolon"})", R"({"listen": "h:port"})", R"({"backend": "gpu"})",
        R"({"remote": {"timeout_ms": 0}})", R"({"remote": {"retries": -1}})",
        R"({"cache": {"capacity": 0}})", R"({"refill": {"target": 9}})", R"({"seed": "x"})"}) {
    EXPECT_THROW(parse_service_config(bad, "/"), ConfigError) << bad;
  }
  EXPECT_THROW(load_service_config("/nonexistent/mill.json"), ConfigError);
}

TEST(ServiceConfig, LoadResolvesAgainstFileDirectory) {
  testing::TempDir dir;
  {
    std::ofstream out(dir / "mill.json");
    out << R"({"cache": {"path": "c.journal"}})";
  }
  EXPECT_EQ(*load_service_config(dir / "mill.json").cache_path, dir / "c.journal");
}

TEST(ServiceConfig, ShippedExampleParses) {
  const auto path = testing::data_dir().parent_path() / "config" / "mill.example.json";
  const ServiceConfig c = load_service_config(path);
  EXPECT_EQ(c.backend, BackendKind::Builtin);
}

}  // namespace
}  // namespace rumour_mill
