#include "cnrrt/netpbm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <optional>

#include "cnrrt/errors.hpp"

namespace cnrrt
{

namespace
{

struct Header
{
    std::string magic;
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::size_t data_offset = 0;
};

// Parses "Px <w> <h> <maxval>" with optional '#' comments; exactly one
// whitespace byte separates maxval from the raster.
Header parse_header(const std::string& bytes)
{
    std::size_t pos = 0;
    auto skip_space = [&]() {
        while (pos < bytes.size())
        {
            if (bytes[pos] == '#')
            {
                while (pos < bytes.size() && bytes[pos] != '\n')
                {
                    ++pos;
                }
            }
            else if (std::isspace(static_cast<unsigned char>(bytes[pos])))
            {
                ++pos;
            }
            else
            {
                break;
            }
        }
    };
    auto token = [&]() {
        skip_space();
        const std::size_t begin = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) && bytes[pos] != '#')
        {
            ++pos;
        }
        if (begin == pos)
        {
            throw FormatError("truncated netpbm header");
        }
        return bytes.substr(begin, pos - begin);
    };
    auto number = [&]() {
        const std::string t = token();
        int v = 0;
        for (char c : t)
        {
            if (!std::isdigit(static_cast<unsigned char>(c)) || v > 1'000'000)
            {
                throw FormatError("bad number '" + t + "' in netpbm header");
            }
            v = v * 10 + (c - '0');
        }
        return v;
    };

    Header h;
    h.magic = token();
    h.width = number();
    h.height = number();
    h.maxval = number();
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
    {
        throw FormatError("missing whitespace after netpbm header");
    }
    h.data_offset = pos + 1;
    if (h.width <= 0 || h.height <= 0)
    {
        throw FormatError("netpbm dimensions must be positive");
    }
    if (h.maxval != 255)
    {
        throw FormatError("only 8-bit netpbm files (maxval 255) are supported");
    }
    return h;
}

std::string header_text(const char* magic, int w, int h)
{
    return std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
}

} // namespace

std::string encode_map_ppm(const GridMap& map)
{
    std::string out = header_text("P6", map.width(), map.height());
    const std::size_t base = out.size();
    out.resize(base + 3 * map.cell_count(), '\0');
    const Cell s = cell_of(map.start());
    const Cell g = cell_of(map.goal());
    for (int r = 0; r < map.height(); ++r)
    {
        for (int c = 0; c < map.width(); ++c)
        {
            const std::size_t px = base + 3 * (static_cast<std::size_t>(r) * map.width() + c);
            out[px + 0] = static_cast<char>(map.occupied(r, c) ? 255 : 0);
            out[px + 1] = static_cast<char>(Cell{r, c} == s ? 255 : 0);
            out[px + 2] = static_cast<char>(Cell{r, c} == g ? 255 : 0);
        }
    }
    return out;
}

GridMap decode_map_ppm(const std::string& bytes)
{
    const Header h = parse_header(bytes);
    if (h.magic != "P6")
    {
        throw FormatError("map files must be binary PPM (P6)");
    }
    const std::size_t need = 3 * static_cast<std::size_t>(h.width) * h.height;
    if (bytes.size() - h.data_offset < need)
    {
        throw FormatError("PPM raster is truncated");
    }
    GridMap map(h.width, h.height);
    std::optional<Cell> start;
    std::optional<Cell> goal;
    for (int r = 0; r < h.height; ++r)
    {
        for (int c = 0; c < h.width; ++c)
        {
            const std::size_t px = h.data_offset + 3 * (static_cast<std::size_t>(r) * h.width + c);
            const auto red = static_cast<unsigned char>(bytes[px]);
            const auto green = static_cast<unsigned char>(bytes[px + 1]);
            const auto blue = static_cast<unsigned char>(bytes[px + 2]);
            map.set_occupied(r, c, red >= 128);
            if (green >= 128)
            {
                if (start)
                {
                    throw FormatError("PPM map marks more than one start cell");
                }
                start = Cell{r, c};
            }
            if (blue >= 128)
            {
                if (goal)
                {
                    throw FormatError("PPM map marks more than one goal cell");
                }
                goal = Cell{r, c};
            }
        }
    }
    if (!start || !goal)
    {
        throw FormatError("PPM map must mark exactly one start (green) and one goal (blue) cell");
    }
    map.set_start(cell_center(*start));
    map.set_goal(cell_center(*goal));
    return map;
}

std::string encode_mask_pgm(const GuidanceMask& mask)
{
    std::string out = header_text("P5", mask.width(), mask.height());
    for (std::uint8_t b : mask.bits())
    {
        out.push_back(static_cast<char>(b ? 255 : 0));
    }
    return out;
}

GuidanceMask decode_mask_pgm(const std::string& bytes)
{
    const Header h = parse_header(bytes);
    if (h.magic != "P5")
    {
        throw FormatError("mask files must be binary PGM (P5)");
    }
    const std::size_t need = static_cast<std::size_t>(h.width) * h.height;
    if (bytes.size() - h.data_offset < need)
    {
        throw FormatError("PGM raster is truncated");
    }
    GuidanceMask mask(h.width, h.height);
    for (int r = 0; r < h.height; ++r)
    {
        for (int c = 0; c < h.width; ++c)
        {
            const auto v = static_cast<unsigned char>(bytes[h.data_offset + static_cast<std::size_t>(r) * h.width + c]);
            mask.set({r, c}, v >= 128);
        }
    }
    return mask;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
    {
        throw IoError("failed while reading '" + path.string() + "'");
    }
    return data;
}

void write_file(const std::filesystem::path& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
    {
        throw IoError("failed while writing '" + path.string() + "'");
    }
}

void save_map(const GridMap& map, const std::filesystem::path& path)
{
    write_file(path, encode_map_ppm(map));
}

GridMap load_map(const std::filesystem::path& path)
{
    return decode_map_ppm(read_file(path));
}

void save_mask(const GuidanceMask& mask, const std::filesystem::path& path)
{
    write_file(path, encode_mask_pgm(mask));
}

GuidanceMask load_mask(const std::filesystem::path& path)
{
    return decode_mask_pgm(read_file(path));
}

GuidanceMask load_mask(const std::filesystem::path& path, const GridMap& map)
{
    GuidanceMask mask = load_mask(path);
    if (!mask.matches(map))
    {
        throw DimensionMismatch("mask is " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()) +
                                " but the map is " + std::to_string(map.width()) + "x" +
                                std::to_string(map.height()));
    }
    return mask;
}

} // namespace cnrrt
