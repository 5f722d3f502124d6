#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "error.hpp"
#include "io.hpp"
#include "suites.hpp"
#include "support.hpp"

using namespace freelip;
using namespace freelip::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "freelip_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("metric JSON and CSV round trips") {
  auto s = line({0, q("1/3"), 2});
  Json doc = space_to_json(*s);
  CHECK(doc["dist"][0][1] == "1/3");
  auto back = space_from_json(doc);
  CHECK(back->same_as(*s));
  CHECK(space_from_json(doc, std::string("2"))->label(space_from_json(doc, std::string("2"))->base()) == "2");

  auto csv = space_from_csv(space_to_csv(*s), "0");
  CHECK(csv->same_as(*s));
  auto labelled = space_from_csv("a,b\na,0,1.5\nb,1.5,0\n", "a");
  CHECK(labelled->d(PointId{0}, PointId{1}) == q("3/2"));

  Json numbers = parse_json_text(R"({"labels":["0","a"],"base":"0","dist":[[0,0.25],[0.25,0]]})");
  CHECK(space_from_json(numbers)->d(PointId{0}, PointId{1}) == q("1/4"));
  Json flt = parse_json_text(R"({"labels":["0","a"],"base":"0","backend":"float","dist":[[0,0.1],[0.1,0]]})");
  CHECK_FALSE(space_from_json(flt)->is_exact());

  CHECK(code_of([] { parse_json_text("{"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { space_from_json(parse_json_text(R"({"labels":["0"]})")); }) == ErrorCode::kParseError);
  CHECK(code_of([] { space_from_json(parse_json_text(R"({"labels":["0","a"],"base":"0","dist":[[0,"x"],[1,0]]})")); }) ==
        ErrorCode::kParseError);
  CHECK(code_of([] { space_from_json(parse_json_text(R"({"labels":["0","a"],"base":"0","dist":[[0,1],[2,0]]})")); }) ==
        ErrorCode::kAsymmetricMatrix);
  CHECK(code_of([] { space_from_csv("a,b\n0,1\n", "a"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { load_space("/nonexistent/m.json"); }) == ErrorCode::kIoError);
}

TEST_CASE("function and vector files resolve their space") {
  auto dir = scratch_dir();
  auto s = line({0, 1, 3});
  write_file(dir / "m.json", space_to_json(*s).dump());
  write_file(dir / "f.json", R"({"space": "m.json", "values": {"1": "1/2", "3": 2}})");
  write_file(dir / "v.json", R"({"space": "m.json", "coeffs": {"3": 1, "1": "-1"}})");
  auto f = load_function((dir / "f.json").string());
  CHECK(f(at(s, "1")) == q("1/2"));
  CHECK(f(at(s, "0")) == 0);
  auto mu = load_vector((dir / "v.json").string());
  CHECK(free_norm_dual(mu).norm == 2);

  Json inline_doc = function_to_json(f, true);
  CHECK(function_from_json(inline_doc).values() == f.values());
  Json vec_doc = vector_to_json(mu, true);
  CHECK(vector_from_json(vec_doc) == mu);

  CHECK(code_of([&] { function_from_json(parse_json_text(R"({"space": "m.json", "values": {"1": 1}})"), dir.string()); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { function_from_json(parse_json_text(R"({"space": "m.json", "values": {"0": 1, "1": 1, "3": 1}})"),
                                         dir.string()); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { vector_from_json(parse_json_text(R"({"space": "m.json", "coeffs": {"9": 1}})"), dir.string()); }) ==
        ErrorCode::kUnknownPoint);
}

TEST_CASE("families and space specs") {
  CHECK(generate_space("example_3_13", {{"N", "10"}}, 0)->size() == 19);
  CHECK(generate_space("example_3_17", {{"N", "4"}}, 0)->size() == 7);
  CHECK(generate_space("fat_cantor", {{"k", "2"}}, 0)->size() == 8);
  CHECK_FALSE(generate_space("snowflake", {{"n", "5"}}, 0)->is_exact());
  CHECK(code_of([] { generate_space("nope", {}, 0); }) == ErrorCode::kInvalidParameter);
  CHECK(code_of([] { generate_space("grid", {{"m", "3"}}, 0); }) == ErrorCode::kInvalidParameter);
  CHECK(code_of([] { generate_space("grid", {{"n", "x"}}, 0); }) == ErrorCode::kInvalidParameter);

  auto a = spaces_from_spec("random:count=12,maxn=8,seed=3");
  auto b = spaces_from_spec("random:count=12,maxn=8,seed=3");
  REQUIRE(a.size() == 12);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i]->same_as(*b[i]));
    CHECK(a[i]->size() >= 3);
    CHECK(a[i]->size() <= 8);
  }
  CHECK(spaces_from_spec("gap:count=3,n=5,D=9/5,seed=2").size() == 3);
  CHECK(spaces_from_spec("family:grid,n=7").front()->size() == 7);
  CHECK(code_of([] { spaces_from_spec("random:count=2,bogus=1"); }) == ErrorCode::kInvalidParameter);
}

TEST_CASE("suites pass and report reproducers") {
  auto spaces = spaces_from_spec("random:count=6,maxn=6,seed=1");
  for (const auto& name : suite_names()) {
    if (name == "lemma5_4") continue;
    auto rep = run_suite(name, spaces, 1, 2);
    INFO(name);
    CHECK(rep.ok());
    CHECK(rep.instances > 0);
  }
  auto grid = spaces_from_spec("family:grid,n=41");
  auto ssd = run_suite("lemma5_4", grid, 0, 2);
  CHECK(ssd.instances > 0);
  REQUIRE_FALSE(ssd.ok());
  CHECK(ssd.failures.front().contains("space"));
  CHECK(ssd.failures.front().contains("tuple"));

  auto one = run_suite("lemma1_7", spaces, 5, 1).to_json().dump();
  auto many = run_suite("lemma1_7", spaces, 5, 4).to_json().dump();
  CHECK(one == many);
  CHECK(code_of([&] { run_suite("nope", spaces, 0, 1); }) == ErrorCode::kInvalidParameter);
}
