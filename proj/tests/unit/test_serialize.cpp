#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "smallf/serialize.hpp"

using namespace smallf;

TEST_SUITE("serialize") {
  TEST_CASE("csv escaping") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
  }

  TEST_CASE("table rendering") {
    Table t({{"n", "count", Provenance::Exact}, {"ratio", "1", Provenance::Float}});
    CHECK(t.columns()[0].header() == "n [count; exact]");
    t.add_row({"4", "0.5"});
    t.add_row({"1/3", "x,y"});
    CHECK(t.csv() == "n [count; exact],ratio [1; float]\r\n4,0.5\r\n1/3,\"x,y\"\r\n");
    const auto j = t.json();
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][1]["n"] == "1/3");
    CHECK_THROWS(t.add_row({"only one"}));
  }

  TEST_CASE("atomic write replaces the file") {
    const auto dir = std::filesystem::temp_directory_path() / ("smallf_ser_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.json";
    write_atomic(path, "first\n");
    write_atomic(path, dump(Json{{"k", 1}}));
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "{\n  \"k\": 1\n}\n");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    std::filesystem::remove_all(dir);
  }
}
