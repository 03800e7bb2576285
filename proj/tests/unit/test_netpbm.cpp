#include <filesystem>

#include "cnrrt/errors.hpp"
#include "cnrrt/netpbm.hpp"
#include "doctest.h"

using namespace cnrrt;
namespace fs = std::filesystem;

namespace
{

GridMap sample_map()
{
    GridMap m(5, 3);
    m.set_occupied(1, 2, true);
    m.set_occupied(2, 4, true);
    m.set_start({0.5, 0.5});
    m.set_goal({4.5, 0.5});
    return m;
}

} // namespace

TEST_CASE("map PPM layout")
{
    const std::string bytes = encode_map_ppm(sample_map());
    const std::string header = "P6\n5 3\n255\n";
    REQUIRE(bytes.size() == header.size() + 45);
    CHECK(bytes.substr(0, header.size()) == header);
    auto px = [&](int r, int c, int ch) {
        return static_cast<unsigned char>(bytes[header.size() + 3 * (r * 5 + c) + ch]);
    };
    CHECK(px(1, 2, 0) == 255);
    CHECK(px(0, 0, 1) == 255);
    CHECK(px(0, 4, 2) == 255);
    CHECK(px(0, 1, 0) == 0);
}

TEST_CASE("map PPM round trip")
{
    const GridMap m = sample_map();
    CHECK(decode_map_ppm(encode_map_ppm(m)) == m);
}

TEST_CASE("PPM headers with comments and thresholded values")
{
    std::string bytes = "P6\n# made by hand\n2 1 # size\n255\n";
    bytes += std::string("\x90\xff\x00", 3);
    bytes += std::string("\x10\x00\xc0", 3);
    const GridMap m = decode_map_ppm(bytes);
    CHECK(m.occupied(0, 0));
    CHECK_FALSE(m.occupied(0, 1));
    CHECK(m.start() == Point{0.5, 0.5});
    CHECK(m.goal() == Point{1.5, 0.5});
}

TEST_CASE("malformed PPM input")
{
    CHECK_THROWS_AS(decode_map_ppm(""), FormatError);
    CHECK_THROWS_AS(decode_map_ppm("P5\n1 1\n255\n\x00"), FormatError);
    CHECK_THROWS_AS(decode_map_ppm("P6\n2 2\n255\n" + std::string(5, '\0')), FormatError);
    CHECK_THROWS_AS(decode_map_ppm("P6\n1 1\n65535\n" + std::string(6, '\0')), FormatError);
    CHECK_THROWS_AS(decode_map_ppm("P6\n0 1\n255\n"), FormatError);
    CHECK_THROWS_AS(decode_map_ppm("P6\nx 1\n255\n"), FormatError);
    // No start/goal, and two starts.
    CHECK_THROWS_AS(decode_map_ppm("P6\n1 1\n255\n" + std::string(3, '\0')), FormatError);
    std::string two = "P6\n3 1\n255\n";
    two += std::string("\x00\xff\x00", 3) + std::string("\x00\xff\x00", 3) + std::string("\x00\x00\xff", 3);
    CHECK_THROWS_AS(decode_map_ppm(two), FormatError);
}

TEST_CASE("mask PGM round trip and threshold")
{
    GuidanceMask mask(4, 2);
    mask.set({0, 1});
    mask.set({1, 3});
    const std::string bytes = encode_mask_pgm(mask);
    CHECK(bytes.substr(0, 11) == "P5\n4 2\n255\n");
    CHECK(decode_mask_pgm(bytes) == mask);

    std::string gray = "P5\n2 1\n255\n";
    gray += std::string("\x7f\x80", 2);
    const GuidanceMask g = decode_mask_pgm(gray);
    CHECK_FALSE(g.test({0, 0}));
    CHECK(g.test({0, 1}));
    CHECK_THROWS_AS(decode_mask_pgm("P6\n1 1\n255\n\x00\x00\x00"), FormatError);
}

TEST_CASE("file helpers report I/O and dimension errors")
{
    const fs::path dir = fs::temp_directory_path() / "cnrrt_netpbm_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const GridMap m = sample_map();
    save_map(m, dir / "m.ppm");
    CHECK(load_map(dir / "m.ppm") == m);

    GuidanceMask mask(5, 3);
    mask.set({2, 2});
    save_mask(mask, dir / "k.pgm");
    CHECK(load_mask(dir / "k.pgm", m) == mask);

    save_mask(GuidanceMask(4, 4), dir / "bad.pgm");
    CHECK_THROWS_AS(load_mask(dir / "bad.pgm", m), DimensionMismatch);
    CHECK_THROWS_AS(load_map(dir / "missing.ppm"), IoError);
    CHECK_THROWS_AS(save_map(m, dir / "no_such_dir" / "m.ppm"), IoError);
    fs::remove_all(dir);
}
