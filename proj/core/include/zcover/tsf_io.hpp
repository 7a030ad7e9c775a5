#pragma once

#include <map>
#include <string>

#include "zcover/surface.hpp"

namespace zcover {

// Parsed contents of a surface definition file.
struct SurfaceFile {
  SurfacePtr surface;
  std::map<std::string, RelativeCycle> cycles;
};

// Line-oriented text format.  `#` starts a comment, blank lines are ignored,
// sections appear in the order FIELD, POLYGON..., GLUE..., MARK..., CYCLE...:
//
//   FIELD
//   poly c0 c1 ... cd          monic integer minimal polynomial
//   root lo hi                 rational interval isolating the chosen root
//   POLYGON name
//   v x, y                     one vertex per line, field-element literals
//   GLUE name.edge <-> name.edge
//   MARK vclass                vertex class to mark (ids from the built surface)
//   CYCLE name
//   eclass: weight             one weighted edge class per line
//
// Serialization is canonical: gluings in edge-class order with the canonical
// side first, marks and cycle weights ascending, cycles sorted by name.
// Parsing the serialized form reproduces it byte for byte.
SurfaceFile parse_surface_file(const std::string& text);
std::string serialize_surface_file(const Surface& s,
                                   const std::map<std::string, RelativeCycle>& cycles);

// File variants; load throws BadArgument when the file cannot be read.
SurfaceFile load_surface_file(const std::string& path);
void save_surface_file(const std::string& path, const Surface& s,
                       const std::map<std::string, RelativeCycle>& cycles);

}  // namespace zcover
