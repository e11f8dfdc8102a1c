#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ifslab/presets.hpp"
#include "ifslab/textio.hpp"

using namespace ifslab;

TEST_CASE("rational literals") {
  CHECK(parse_rational("1/512") == doctest::Approx(1.0 / 512));
  CHECK(parse_rational("0.25") == 0.25);
  CHECK(parse_rational(" 3 / 4 ") == 0.75);
  CHECK(parse_rational("1e-3") == 1e-3);
  CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
  CHECK_THROWS_AS(parse_rational("1.5x"), ConfigError);
}

TEST_CASE("double formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, golden_angle(), 1e-9, 123456.789, 0.0})
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("ifs file schema round trips") {
  for (const char* name : {"sierpinski", "fern", "circle_minimal", "circle_example_44", "ns_pair"}) {
    auto preset = make_preset(name);
    std::string text = ifs_to_text(preset.ifs);
    Ifs back = ifs_from_text(text);
    REQUIRE(back.k() == preset.ifs.k());
    CHECK(back.space == preset.ifs.space);
    // serialized again, the text is identical (bit-exact parameters)
    CHECK(ifs_to_text(back) == text);
  }
  // pl maps round trip too
  auto cand = make_cantor_candidate({Rotation{golden_angle()}}, 3);
  CHECK(ifs_to_text(ifs_from_text(ifs_to_text(cand.ifs))) == ifs_to_text(cand.ifs));
}

TEST_CASE("ifs schema rejects malformed input") {
  CHECK_THROWS_AS(ifs_from_text("space = circle\n"), ConfigError);  // no generators
  CHECK_THROWS_AS(ifs_from_text("[generator]\ntype = rotation\nangle = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(ifs_from_text("space = circle\n[generator]\ntype = warp\n"), ConfigError);
  CHECK_THROWS_AS(ifs_from_text("space = circle\n[generator]\ntype = rotation\n"), ConfigError);
  CHECK_THROWS_AS(
      ifs_from_text("space = circle\n[generator]\ntype = rotation\nangle = 2.5\n"),
      ConfigError);  // invalid parameter surfaces as a config error
  // generators must match the space kind
  CHECK_THROWS_AS(
      ifs_from_text("space = box 0 0 1 1\n[generator]\ntype = rotation\nangle = 0.5\n"),
      ConfigError);
}

TEST_CASE("stream specs") {
  CHECK(parse_stream_spec("champernowne", 2).spec_string() == "champernowne");
  auto b = parse_stream_spec("bernoulli:0.5,0.5:42", 2);
  CHECK(b.alphabet() == 2);
  CHECK(b.declared_p_min() == 0.5);
  auto h = parse_stream_spec("biased:0.1:7", 3);
  CHECK(h.declared_p_min() == doctest::Approx(0.1));
  auto e = parse_stream_spec("explicit:1212", 2);
  CHECK(e.size() == 4);
  CHECK(e.at(0) == 1);
  CHECK(e.at(1) == 2);
  CHECK_THROWS_AS(parse_stream_spec("bernoulli:0.5,0.5", 2), ConfigError);
  CHECK_THROWS_AS(parse_stream_spec("bernoulli:0.5,0.5:1", 3), ConfigError);
  CHECK_THROWS_AS(parse_stream_spec("wat", 2), ConfigError);
  CHECK_THROWS_AS(parse_stream_spec("biased:0.9:1", 2), ConfigError);
}

TEST_CASE("config files") {
  const char* path = "/tmp/ifslab_test_config.txt";
  {
    std::ofstream out(path);
    out << "# comment\n";
    out << "preset = sierpinski\n";
    out << "h = 1/256\n";
    out << "n = 1000000\n";
  }
  auto kv = read_config_file(path);
  CHECK(kv.at("preset") == "sierpinski");
  CHECK(parse_rational(kv.at("h")) == 1.0 / 256);
  std::remove(path);

  {
    std::ofstream out(path);
    out << "not a key value line\n";
  }
  CHECK_THROWS_AS(read_config_file(path), ConfigError);
  std::remove(path);
}

TEST_CASE("atomic write leaves no temp file") {
  const char* path = "/tmp/ifslab_test_atomic.txt";
  atomic_write(path, "hello\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "hello");
  std::ifstream tmp(std::string(path) + ".tmp");
  CHECK_FALSE(tmp.good());
  std::remove(path);
}
