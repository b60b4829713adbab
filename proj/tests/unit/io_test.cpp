// Copyright 2026 The qre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include <gtest/gtest.h>

#include "qre/io.hpp"
#include "qre/random.hpp"

namespace qre {
namespace {

std::string invariant_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.invariant();
  }
  return "none";
}

TEST(Presets, RegisteredTagsBuildValidStates) {
  for (const char* tag : {"bell", "bell-minus", "cc-mix", "werner:0.3", "pure:0.5236", "mixed:3", "mixed:2x3", "ghz:3",
                          "diag:0.2,0.8"}) {
    const DensityMatrix rho = presets::from_tag(tag);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12) << tag;
  }
  EXPECT_EQ(presets::from_tag("mixed:2x3").dims(), (Dims{2, 3}));
  EXPECT_EQ(presets::from_tag("ghz:4").dims(), (Dims{2, 2, 2, 2}));
  EXPECT_FALSE(presets::registered().empty());
}

TEST(Presets, Errors) {
  EXPECT_EQ(invariant_of([] { presets::from_tag("bogus"); }), "preset");
  EXPECT_EQ(invariant_of([] { presets::from_tag("werner"); }), "preset");
  EXPECT_EQ(invariant_of([] { presets::from_tag("werner:abc"); }), "preset");
  EXPECT_EQ(invariant_of([] { presets::from_tag("werner:1.5"); }), "werner");
  EXPECT_EQ(invariant_of([] { presets::from_tag("ghz:1"); }), "ghz");
  EXPECT_EQ(invariant_of([] { presets::from_tag("diag:0.5,0.6"); }), "unit_trace");
}

TEST(StateJson, ParsesExplicitMatrix) {
  const std::string text =
      R"({"dims":[2],"matrix":[{"re":0.7,"im":0},{"re":0,"im":0.1},{"re":0,"im":-0.1},{"re":0.3,"im":0}]})";
  const DensityMatrix rho = io::parse_state_spec(text);
  EXPECT_EQ(rho.dims(), (Dims{2}));
  EXPECT_EQ(rho.matrix()(0, 1), Complex(0, 0.1));
  EXPECT_EQ(io::parse_state_spec(R"({"preset":"bell"})").dims(), (Dims{2, 2}));
}

TEST(StateJson, Errors) {
  EXPECT_EQ(invariant_of([] { io::parse_state_spec(R"({"matrix":[{"re":1,"im":0}]})"); }), "dims");
  EXPECT_EQ(invariant_of([] { io::parse_state_spec(R"({"dims":[2],"matrix":[{"re":1,"im":0}]})"); }), "format");
  EXPECT_EQ(invariant_of([] { io::parse_state_spec(R"({"dims":[2])"); }), "format");
  EXPECT_EQ(invariant_of([] {
              io::parse_state_spec(R"({"dims":[2],"matrix":[{"re":0.5,"im":0},{"re":0.2,"im":0},{"re":0,"im":0},{"re":0.5,"im":0}]})");
            }),
            "hermitian");
  EXPECT_EQ(invariant_of([] {
              io::parse_state_spec(R"({"dims":[2],"matrix":[{"re":1.5,"im":0},{"re":0,"im":0},{"re":0,"im":0},{"re":-0.5,"im":0}]})");
            }),
            "psd");
}

TEST(StateJson, RoundTripThroughFile) {
  Rng rng(1);
  const DensityMatrix rho = random_density({2, 3}, rng);
  const auto path = std::filesystem::temp_directory_path() / "qre_io_test_state.json";
  std::ofstream(path) << io::state_json(rho).dump();
  const DensityMatrix back = io::parse_state_spec(path.string());
  std::filesystem::remove(path);
  EXPECT_EQ(back.dims(), rho.dims());
  EXPECT_EQ(max_abs_diff(back.matrix(), rho.matrix()), 0.0);
}

TEST(ChannelSpec, Presets) {
  const LocalChannel one = io::parse_channel_spec("depolarizing:0.2", {2, 3});
  EXPECT_EQ(one.parties(), 2u);
  EXPECT_EQ(one.local_dim(1), 3u);
  const LocalChannel two = io::parse_channel_spec("bitflip:0.3+identity", {2, 2});
  EXPECT_EQ(two.kraus(0).size(), 2u);
  EXPECT_EQ(two.kraus(1).size(), 1u);
  EXPECT_THROW(io::parse_channel_spec("bitflip:0.1", {3, 3}), UnsupportedError);
  EXPECT_EQ(invariant_of([] { io::parse_channel_spec("teleport", {2, 2}); }), "preset");
  EXPECT_EQ(invariant_of([] { io::parse_channel_spec("identity+identity+identity", {2, 2}); }), "format");
}

TEST(ChannelSpec, JsonRoundTrip) {
  const LocalChannel ch({channels::amplitude_damping(0.25), channels::depolarizing(3, 0.4)});
  const LocalChannel back = io::parse_channel_spec(io::channel_json(ch).dump(), {2, 3});
  ASSERT_EQ(back.parties(), 2u);
  for (std::size_t p = 0; p < 2; ++p) {
    ASSERT_EQ(back.kraus(p).size(), ch.kraus(p).size());
    for (std::size_t k = 0; k < ch.kraus(p).size(); ++k) EXPECT_EQ(max_abs_diff(back.kraus(p)[k], ch.kraus(p)[k]), 0.0);
  }
  EXPECT_EQ(invariant_of([] { io::parse_channel_spec(R"({"kraus":[[[{"re":0.5,"im":0},{"re":0,"im":0},{"re":0,"im":0},{"re":0.5,"im":0}]]]})", {2}); }),
            "trace_preserving");
  EXPECT_EQ(invariant_of([] { io::parse_channel_spec(R"({"ops":[]})", {2}); }), "format");
}

TEST(EnsembleJson, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    SeparableEnsemble e = random_separable({2, 3}, 1 + seed % 4, seed);
    if (seed % 2) {
      // a grouped, mixed factor exercises the density branch
      e = SeparableEnsemble({2, 3}, {ProductTerm{1.0, {random_density({2, 3}, rng)}, {{0, 1}}}});
    }
    const SeparableEnsemble back = io::parse_ensemble_json(nlohmann::json::parse(io::ensemble_json(e).dump()));
    EXPECT_EQ(back.size(), e.size());
    EXPECT_LE(max_abs_diff(assemble_density(back).matrix(), assemble_density(e).matrix()), 1e-15);
  }
}

TEST(Numbers, InfinityAndUnits) {
  EXPECT_EQ(io::number(kInfinity), "inf");
  const auto e = io::entropy(std::log(2.0));
  EXPECT_NEAR(e["bits"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(io::entropy(kInfinity)["bits"], "inf");
}

TEST(Flatten, DottedKeysSkipArrays) {
  std::vector<std::pair<std::string, std::string>> out;
  io::flatten(nlohmann::json{{"a", 1}, {"b", {{"c", "x"}, {"d", 2.5}}}, {"e", {1, 2}}}, "", out);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0], (std::pair<std::string, std::string>{"a", "1"}));
  EXPECT_EQ(out[1], (std::pair<std::string, std::string>{"b.c", "x"}));
  EXPECT_EQ(out[2], (std::pair<std::string, std::string>{"b.d", "2.5"}));
}

}  // namespace
}  // namespace qre
