#include <filesystem>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "otfa/errors.hpp"
#include "otfa/sequence_io.hpp"

using namespace otfa;

TEST_SUITE("io") {
  TEST_CASE("sequence JSON round trip is exact") {
    std::mt19937_64 rng(61);
    const auto a = oracle::random_complex(GridShape{3, 4}, rng);
    const auto b = sequence_from_json(sequence_to_json(a));
    CHECK(b.shape() == a.shape());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == a[i]);
  }

  TEST_CASE("plain numbers and missing shape") {
    const auto a = sequence_from_json(R"({"values": [1, [0, 2], -3.5]})");
    CHECK(a.shape() == GridShape{3});
    CHECK(a[1] == cplx(0.0, 2.0));
    CHECK(a[2] == cplx(-3.5));
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS_AS(sequence_from_json("[1,2"), ParseError);
    CHECK_THROWS_AS(sequence_from_json(R"({"shape": [2]})"), ParseError);
    CHECK_THROWS_AS(sequence_from_json(R"({"values": ["x"]})"), ParseError);
    CHECK_THROWS_AS(sequence_from_json(R"({"values": [[1, 2, 3]]})"), ParseError);
    CHECK_THROWS(sequence_from_json(R"({"shape": [3], "values": [1, 2]})"));
  }

  TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "otfa_io_test";
    std::filesystem::create_directories(dir);
    const GridSequence a(GridShape{2}, {1.0, cplx(0.5, -0.25)});
    write_sequence(dir / "a.json", a);
    const auto b = read_sequence(dir / "a.json");
    CHECK(b[1] == a[1]);
    CHECK_THROWS_AS(read_sequence(dir / "missing.json"), IoError);
    write_text(dir / "bad.json", "nope");
    CHECK_THROWS_AS(read_sequence(dir / "bad.json"), ParseError);
    CHECK_THROWS_AS(write_text(dir / "no" / "such" / "dir.json", "x"), IoError);
    std::filesystem::remove_all(dir);
  }
}
