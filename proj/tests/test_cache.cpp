#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "etaq/cache.hpp"
#include "etaq/forms.hpp"
#include "etaq/report.hpp"

using namespace etaq;

namespace {

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "etaq_cache_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("rational cache round-trips bit-exactly") {
    EtaSpec spec = EtaSpec::parse("1^-8 2^20 4^-8");
    QExpansion f = c_series(spec, 300);  // coefficients overflow 64 bits
    auto path = cache_path(temp_dir(), spec.to_string(), f.field_d(), f.trunc24());
    write_cache(path, spec.to_string(), f);
    CachedSeries back = read_cache(path);
    CHECK(back.spec == spec.to_string());
    CHECK(back.series.start24() == f.start24());
    CHECK(back.series.trunc24() == f.trunc24());
    CHECK(!qx_first_mismatch(back.series, f, f.trunc24() - 1).has_value());
}

TEST_CASE("quadratic-field cache round-trips bit-exactly") {
    QExpansion g1 = newform_expand(NewformId::g1, 200);
    auto path = cache_path(temp_dir(), "g1", g1.field_d(), g1.trunc24());
    write_cache(path, "g1", g1);
    CachedSeries back = read_cache(path);
    CHECK(back.series.field_d() == -2);
    for (long n = 1; n <= 200; ++n) CHECK(back.series.at(n) == g1.at(n));
}

TEST_CASE("fractional-grid series survive the cache") {
    QExpansion f = eta_expand(EtaSpec::parse("1^1 2^-2 4^3"), 100);
    CHECK(f.start24() == 9);
    auto path = cache_path(temp_dir(), "1^1 2^-2 4^3", 0, f.trunc24());
    write_cache(path, "1^1 2^-2 4^3", f);
    CachedSeries back = read_cache(path);
    CHECK(back.series.start24() == 9);
    CHECK(!qx_first_mismatch(back.series, f, f.trunc24() - 1).has_value());
}

TEST_CASE("cache file name is keyed by spec, field and truncation") {
    CHECK(cache_file_name("1^-1 3^3", 0, 240) == "1pm1_3p3.d0.t240.jsonl");
    CHECK(cache_file_name("1^-1 3^3", 0, 240) != cache_file_name("1^-1 3^3", 0, 480));
    CHECK(cache_file_name("1^-1 3^3", 0, 240) != cache_file_name("1^-1 3^3", -2, 240));
}

TEST_CASE("exponent rendering in reports") {
    CHECK(exponent_string(24 * 14) == "14");
    CHECK(exponent_string(33) == "11/8");
    CHECK(exponent_string(9) == "3/8");
    CHECK(exponent_string(0) == "0");
    CHECK(exponent_string(-24) == "-1");
}
