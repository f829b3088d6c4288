#pragma once

// Projection specification shared by the CLI, meshing and implicitization:
//   "stereo:default"      stereographic from (0,0,0,1)
//   "stereo:cx,cy,cz,cw"  stereographic from a unit center (exact rationals)
//   "central"             (x0:...:x4) -> (x1:x2:x3:x4)

#include <string>

#include "starsurf/moebius.hpp"

namespace starsurf {

struct ProjectionSpec {
    enum class Kind { stereo, central };

    Kind kind = Kind::stereo;
    QuatR center{Rat(0), Rat(0), Rat(0), Rat(1)};  // stereo center, unit

    static ProjectionSpec parse(const std::string& text);
    std::string to_string() const;

    bool is_default_stereo() const {
        return kind == Kind::stereo && center == QuatR(Rat(0), Rat(0), Rat(0), Rat(1));
    }

    StereographicR stereo_exact() const {
        return is_default_stereo() ? StereographicR()
                                   : StereographicR(UnitQuatR(center));
    }
    StereographicD stereo_float() const;
};

}  // namespace starsurf
