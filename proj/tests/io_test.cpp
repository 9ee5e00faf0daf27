#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "glfs/error.hpp"
#include "glfs/io.hpp"

using namespace glfs;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidInput;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("glfs_io_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("matrix parsing") {
  const DataMatrix m = io::parse_matrix("1,2\n3,4\n");
  CHECK(m.features() == 2);
  CHECK(m.samples() == 2);
  CHECK(m.values()(1, 0) == 3.0);

  const DataMatrix h = io::parse_matrix("s1,s2\n1,2\n");
  CHECK(h.features() == 1);
  CHECK(h.values()(0, 1) == 2.0);

  const DataMatrix spaced = io::parse_matrix(" 1.5 , -2e-3\r\n+3,4\n\n");
  CHECK(spaced.values()(0, 1) == -2e-3);
  CHECK(spaced.values()(1, 0) == 3.0);

  CHECK(code_of([] { io::parse_matrix("1,2\n3\n"); }) == ErrorCode::ParseError);
  CHECK(message_of([] { io::parse_matrix("1,2\n3\n"); }).find("line 2") != std::string::npos);
  CHECK(message_of([] { io::parse_matrix("a,b\n1,2\n1,x\n"); }).find("line 3") != std::string::npos);
  CHECK(message_of([] { io::parse_matrix("1,2\n1,nan\n"); }).find("line 2") != std::string::npos);
  CHECK(message_of([] { io::parse_matrix("1,inf\n"); }).find("line 1") != std::string::npos);
  CHECK(code_of([] { io::parse_matrix(""); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::parse_matrix("a,b\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("labels and index files") {
  CHECK(io::parse_labels("1\n0\n1\n") == std::vector<int>{1, 0, 1});
  CHECK(io::parse_labels("ALL\nAML\nALL\n") == std::vector<int>{0, 1, 0});
  CHECK(io::parse_labels("b\n3\nb\n") == std::vector<int>{0, 1, 0});
  CHECK(code_of([] { io::parse_labels(""); }) == ErrorCode::ParseError);
  CHECK(io::parse_indices("4\n0\n") == std::vector<Index>{4, 0});
  CHECK(code_of([] { io::parse_indices("1\n-2\n"); }) == ErrorCode::ParseError);
  CHECK(io::parse_ranked_features("7\t0.5\n2\t0.25\n3\t0\n") == std::vector<Index>{7, 2, 3});
  CHECK(code_of([] { io::parse_ranked_features("x\t1\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_exact(0.1) == "0.10000000000000001");
  const std::string csv = io::matrix_to_csv((Matrix(2, 2) << 1.0 / 3.0, 2, -0.5, 1e-300).finished());
  const DataMatrix back = io::parse_matrix(csv);
  CHECK(back.values()(0, 0) == 1.0 / 3.0);
  CHECK(back.values()(1, 1) == 1e-300);
}

TEST_CASE("staged outputs") {
  const fs::path dir = scratch_dir("staged");
  {
    io::OutputSet out;
    out.write(dir / "a.txt", "alpha\n");
    out.write(dir / "b.txt", "beta\n");
    CHECK(!fs::exists(dir / "a.txt"));
    out.commit();
  }
  CHECK(io::read_file(dir / "a.txt") == "alpha\n");
  CHECK(io::read_file(dir / "b.txt") == "beta\n");
  {
    io::OutputSet out;
    out.write(dir / "a.txt", "replaced\n");
    out.write(dir / "c.txt", "gamma\n");
  }  // never committed
  CHECK(io::read_file(dir / "a.txt") == "alpha\n");
  CHECK(!fs::exists(dir / "c.txt"));
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  CHECK(files == 2);

  CHECK(code_of([&] { io::read_file(dir / "missing.csv"); }) == ErrorCode::IoError);
  CHECK(code_of([&] {
          io::OutputSet out;
          out.write(dir / "no_such_dir" / "x.txt", "x");
        }) == ErrorCode::IoError);
  fs::remove_all(dir);
}
