#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Result {
  int rc;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int rc = nilspec::cli::run(args, out, err);
  return {rc, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

fs::path scratch(const std::string& name, const std::string& body) {
  fs::path p = fs::temp_directory_path() / ("nilspec_cli_" + name);
  std::ofstream(p) << body;
  return p;
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("validate bundled example") {
  auto r = call({"validate", "--example", "I"});
  CHECK(r.rc == 0);
  CHECK(has(r.out, "3-step, center dim 1, strictly nonsingular"));
  auto csv = call({"validate", "--example", "2", "--format", "csv"});
  CHECK(csv.rc == 0);
  CHECK(has(csv.out, "step,3\ncenter_dim,1\nstrictly_nonsingular,true"));
}

TEST_CASE("input errors exit 2") {
  auto empty = scratch("empty.txt", "");
  auto r = call({"validate", "--input", empty.string()});
  CHECK(r.rc == 2);
  CHECK(has(r.err, "empty"));
  CHECK(call({"validate", "--input", "/nonexistent/alg.txt"}).rc == 2);
  CHECK(call({"validate"}).rc == 2);
  CHECK(call({"validate", "--example", "I", "--input", empty.string()}).rc == 2);
  CHECK(call({"validate", "--example", "III"}).rc == 2);
  CHECK(call({"frobnicate"}).rc == 2);
  CHECK(call({"scan", "--example", "I", "--a", "1,x"}).rc == 2);
  CHECK(call({"scan", "--example", "I", "--precision", "32"}).rc == 2);
  CHECK(call({"etau", "--example", "I", "--format", "xml"}).rc == 2);
  CHECK(call({"validate", "--example", "I", "--output", "/nonexistent/dir/out.txt"}).rc == 2);
  fs::remove(empty);
}

TEST_CASE("precision from the environment") {
  setenv("NILSPEC_PRECISION", "40", 1);
  CHECK(call({"validate", "--example", "I"}).rc == 2);
  CHECK(call({"validate", "--example", "I", "--precision", "128"}).rc == 0);
  setenv("NILSPEC_PRECISION", "256", 1);
  CHECK(call({"validate", "--example", "I"}).rc == 0);
  unsetenv("NILSPEC_PRECISION");
}

TEST_CASE("non-derivation is a mathematical failure") {
  auto f = scratch("bad_der.txt",
                   "nilspec-algebra 1\ndim 3\nnames X Y Z\nbracket 1 2 0 0 1\nmetric identity\nderivation D\nentry 1 1 1\nend\n");
  auto r = call({"derivation", "--input", f.string()});
  CHECK(r.rc == 1);
  CHECK(has(r.out, "derivation: no"));
  fs::remove(f);
}

TEST_CASE("extend output reads back") {
  fs::path out = fs::temp_directory_path() / "nilspec_cli_ext.txt";
  auto r = call({"extend", "--example", "I", "--output", out.string()});
  REQUIRE(r.rc == 0);
  CHECK(r.out.empty());
  auto v = call({"validate", "--input", out.string()});
  CHECK(v.rc == 0);
  CHECK(has(v.out, "3-step, center dim 1, strictly nonsingular"));
  auto d = call({"derivation", "--input", out.string()});
  CHECK(d.rc == 0);
  CHECK(has(d.out, "derivation: yes"));
  CHECK(has(d.out, "skew: no"));  // the eta term breaks skewness
  fs::remove(out);
}

TEST_CASE("laplacian table") {
  auto r = call({"laplacian", "--example", "II"});
  CHECK(r.rc == 0);
  CHECK(has(r.out, "Delta z2 = 2*z2 - xi"));
  CHECK(has(r.out, "Delta xi = -z2 + 4*xi"));
  auto one = call({"laplacian", "--example", "I"});
  CHECK(has(one.out, "Delta z1 = 2*z1 + 2*xi"));
}

TEST_CASE("scan verdicts") {
  auto r = call({"scan", "--example", "I", "--a", "1,0,0,1", "--format", "csv"});
  CHECK(r.rc == 0);
  CHECK(r.out == "a1,a2,a3,a4,constant,coefficient,frequency\n1,0,0,1,true,-1,0\n");
  auto n = call({"charpoly-scan", "--example", "I", "--a", "1,1,1,1", "--format", "csv"});
  CHECK(n.out == "a1,a2,a3,a4,constant,coefficient,frequency\n1,1,1,1,false,5,1\n");
  auto sweep = call({"scan", "--example", "II", "--radius", "1"});
  CHECK(has(sweep.out, "1 of 81 tuples constant"));
  CHECK(call({"scan", "--example", "I", "--a", "1,0,1,0,0,0,1"}).rc == 2);  // not a character
}

TEST_CASE("scan samples") {
  auto r = call({"scan", "--example", "I", "--a", "1,1,0,0", "--samples", "32"});
  REQUIRE(r.rc == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 33);
  CHECK(has(ls[0], "(varies)"));
  CHECK(ls[0].rfind("s,x^7,x^6,", 0) == 0);
  CHECK(ls[1].rfind("0,1,", 0) == 0);
  auto again = call({"scan", "--example", "I", "--a", "1,1,0,0", "--samples", "32"});
  CHECK(again.out == r.out);
  auto flat = call({"scan", "--example", "I", "--a", "0,1,1,0", "--s", "0,1,2"});
  CHECK_FALSE(has(flat.out, "varies"));
  auto ls2 = lines(flat.out);
  REQUIRE(ls2.size() == 4);
  CHECK(ls2[1].substr(ls2[1].find(',')) == ls2[3].substr(ls2[3].find(',')));
  auto plot = call({"scan", "--example", "I", "--a", "1,1,0,0", "--samples", "8", "--plot-script"});
  CHECK(has(plot.out, "plot for"));
}

TEST_CASE("deform samples") {
  auto r = call({"deform", "--example", "I", "--s", "0", "--format", "csv"});
  REQUIRE(r.rc == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  std::string expect = "0";
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) expect += i == j ? ",1" : ",0";
  CHECK(ls[1] == expect);
  auto t = call({"deform", "--example", "II"});
  CHECK(has(t.out, "flow identity: yes"));
  CHECK(has(t.out, "automorphisms: yes"));
}

TEST_CASE("etau eigenvalues") {
  auto r = call({"etau", "--example", "I", "--a", "0,0,0,0", "--s", "0", "--format", "csv"});
  REQUIRE(r.rc == 0);
  // tau = 0: Laplacian on invariant 1-forms; z2 gives 2, the (z1, xi) block [[2,2],[2,5]] gives 1 and 6
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  std::vector<double> v;
  std::istringstream row(ls[1]);
  for (std::string c; std::getline(row, c, ',');) v.push_back(std::stod(c));
  REQUIRE(v.size() == 8);
  CHECK(v[1] == doctest::Approx(0).epsilon(1e-12));
  CHECK(v[4] == doctest::Approx(0).epsilon(1e-12));
  CHECK(v[5] == doctest::Approx(1).epsilon(1e-12));
  CHECK(v[6] == doctest::Approx(2).epsilon(1e-12));
  CHECK(v[7] == doctest::Approx(6).epsilon(1e-12));
}

TEST_CASE("spectrum-compare report") {
  auto small = call({"spectrum-compare", "--example", "I", "--radius", "1"});
  CHECK(has(small.out, "characters: 9"));
  auto r = call({"spectrum-compare", "--example", "I", "--format", "csv"});
  REQUIRE(r.rc == 0);
  CHECK(has(r.out, "# function part: equal"));
  CHECK(has(r.out, "# note: "));
  CHECK(has(r.out, "# verdict: isospectral on characters, not on 1-forms"));
  CHECK(call({"spectrum-compare", "--example", "I", "--s", "0,1,2"}).rc == 2);
}

TEST_CASE("reproduce with fault injection") {
  auto r = call({"reproduce", "--example", "I", "--tamper", "sign"});
  CHECK(r.rc == 1);
  CHECK(has(r.out, "connection-table: FAIL"));
  CHECK(has(r.out, "first failure: connection-table"));
  CHECK(call({"reproduce", "--input", "x"}).rc == 2);
}
