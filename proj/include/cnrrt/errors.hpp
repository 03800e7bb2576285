#pragma once

#include <stdexcept>
#include <string>

namespace cnrrt
{

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed netpbm header/raster or a bad config/manifest file.
class FormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A mask or grid paired with a map of a different size.
class DimensionMismatch : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class NoPathError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class GenerationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace cnrrt
