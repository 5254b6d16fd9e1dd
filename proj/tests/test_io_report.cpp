#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>

#include "clusterforge/family_io.hpp"
#include "clusterforge/ground.hpp"
#include "clusterforge/rational.hpp"
#include "clusterforge/report.hpp"

namespace cf = clusterforge;

namespace {

std::string parse_error_of(const std::string& text, int d = 2) {
    std::istringstream in(text);
    try {
        cf::parse_family(in, d, "file");
    } catch (const cf::family_parse_error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("family files round-trip through parse and write") {
    cf::Params p(5, 2, 2);
    cf::Family f = cf::make_family(p, {{2, 5}, {1, 2}, {3, 4}});
    std::ostringstream out;
    cf::write_family(out, f);
    std::istringstream in(out.str());
    CHECK(cf::parse_family(in, 2, "roundtrip") == f);
}

TEST_CASE("family files allow comments and blank lines") {
    std::istringstream in(
        "# leading comment\n"
        "\n"
        "5 2  # header\n"
        "1 2\n"
        "   \n"
        "3 4 # a set\n"
        "2 1\n");
    cf::Family f = cf::parse_family(in, 2, "commented");
    CHECK(f.params.n == 5);
    CHECK(f.params.k == 2);
    CHECK(f.size() == 2);  // the permuted duplicate 2 1 collapses into 1 2
}

TEST_CASE("parse errors carry the file name and line number") {
    CHECK(parse_error_of("5 2\n1 2 3\n") == "file:2: expected 2 elements, got 3");
    CHECK(parse_error_of("5 2\n1\n") == "file:2: expected 2 elements, got 1");
    CHECK(parse_error_of("5 2\n1 9\n") == "file:2: element 9 outside [1,5]");
    CHECK(parse_error_of("5 2\n3 3\n") == "file:2: repeated element 3");
    CHECK(parse_error_of("5 2\n1 x\n") == "file:2: unreadable token");
    CHECK(parse_error_of("5\n") == "file:1: header must be exactly 'n k'");
    CHECK(parse_error_of("2 5\n") == "file:1: header needs 1 <= k <= n <= 64");
    CHECK(parse_error_of("") == "file:0: missing 'n k' header");
    // params rejected after the fact point back at the header line
    CHECK(parse_error_of("5 2\n# d exceeds k\n", 3).rfind("file:1: ", 0) == 0);
}

TEST_CASE("reading a missing file reports the path") {
    CHECK_THROWS_WITH_AS(cf::read_family_file("/nonexistent/f.txt", 2),
                         "cannot open family file: /nonexistent/f.txt", std::runtime_error);
}

TEST_CASE("rationals stay normalized") {
    CHECK(cf::Rational::of(4, 6) == cf::Rational::of(2, 3));
    CHECK(cf::Rational::of(-4, -6) == cf::Rational::of(2, 3));
    CHECK(cf::Rational::of(4, -6) == cf::Rational::of(-2, 3));
    CHECK(cf::Rational::of(0, 7) == cf::Rational::of(0));
    CHECK(cf::Rational::of(2, 3).str() == "2/3");
    CHECK(cf::Rational::of(-2, 3).str() == "-2/3");
    CHECK(cf::Rational::of(5).str() == "5");
    CHECK(cf::Rational::of(5).is_integer());
    CHECK_FALSE(cf::Rational::of(5, 3).is_integer());
    CHECK_THROWS_AS(cf::Rational::of(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic is exact") {
    cf::Rational a = cf::Rational::of(1, 6);
    cf::Rational b = cf::Rational::of(1, 3);
    CHECK(a + b == cf::Rational::of(1, 2));
    CHECK(b - a == a);
    CHECK(a * b == cf::Rational::of(1, 18));
    CHECK(a / b == cf::Rational::of(1, 2));
    CHECK(a < b);
    CHECK(b <= cf::Rational::of(2, 6));
    CHECK(cf::Rational::of(7, 2) > cf::Rational::of(3));
    CHECK_THROWS_AS(a / cf::Rational::of(0), std::domain_error);
    CHECK_THROWS_AS(cf::Rational::of(1LL << 62) * cf::Rational::of(1LL << 62),
                    std::overflow_error);
}

TEST_CASE("reports serialize with a fixed key order") {
    cf::Report rep;
    rep.command = "demo";
    rep.params = cf::Params(5, 2, 2);
    rep.outcome = "pass";
    rep.details["alpha"] = 1;
    rep.details["beta"] = "x";
    rep.exit_code = 0;
    CHECK(rep.to_json() ==
          R"({"command":"demo","params":{"n":5,"k":2,"d":2},"outcome":"pass",)"
          R"("details":{"alpha":1,"beta":"x"},"exit_code":0})");

    std::string text = rep.to_text();
    CHECK(text.find("command: demo") != std::string::npos);
    CHECK(text.find("outcome: pass") != std::string::npos);
}

TEST_CASE("families serialize as sorted element arrays") {
    cf::Params p(5, 2, 2);
    cf::Family f = cf::make_family(p, {{3, 4}, {1, 2}});
    CHECK(cf::family_to_json(f).dump() == "[[1,2],[3,4]]");
    CHECK(cf::kset_to_json(cf::KSet::of({5, 1, 3})).dump() == "[1,3,5]");
}
