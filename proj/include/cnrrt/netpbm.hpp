#pragma once

#include <filesystem>
#include <string>

#include "cnrrt/gridmap.hpp"

namespace cnrrt
{

// Maps are binary PPM (P6, maxval 255): red marks occupied cells, green the
// start cell, blue the goal cell. Masks are binary PGM (P5, maxval 255) with
// 255 for predicted cells. Headers are written as "Px\n<w> <h>\n255\n".

std::string encode_map_ppm(const GridMap& map);
GridMap decode_map_ppm(const std::string& bytes);

std::string encode_mask_pgm(const GuidanceMask& mask);
GuidanceMask decode_mask_pgm(const std::string& bytes);

void save_map(const GridMap& map, const std::filesystem::path& path);
GridMap load_map(const std::filesystem::path& path);

void save_mask(const GuidanceMask& mask, const std::filesystem::path& path);
GuidanceMask load_mask(const std::filesystem::path& path);
/// Loads a mask and checks it pairs with `map`; throws DimensionMismatch.
GuidanceMask load_mask(const std::filesystem::path& path, const GridMap& map);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

} // namespace cnrrt
