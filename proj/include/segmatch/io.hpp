#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "segmatch/geometry.hpp"

namespace segmatch {

struct IntervalInstance;

/// Malformed input. what() names the offending line/field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// {"horizontal":[{"y","x0","x1","w"?}], "vertical":[{"x","y0","y1","w"?}]}, either array optional
SegmentSet parse_segments(std::string_view text);
std::string serialize_segments(const SegmentSet& s);

// {"vertices":[[x,y],...]}
PolyChain parse_chain(std::string_view text);
std::string serialize_chain(const PolyChain& c);

// {"M":..., "pattern":[[[lo,hi],...]|null,...], "text":[...]}
IntervalInstance parse_interval_instance(std::string_view text);
std::string serialize_interval_instance(const IntervalInstance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace segmatch
