#include "phaserank/geometry.hpp"

#include "phaserank/errors.hpp"

namespace phaserank {

std::string to_string(Axis axis) {
    switch (axis) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
    }
    throw InvalidParameterError("unknown axis");
}

Axis axis_from_string(const std::string& s) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    if (s == "z") return Axis::Z;
    throw InvalidParameterError("invalid axis '" + s + "', expected x, y or z");
}

double component(const Vec3& v, Axis axis) {
    switch (axis) {
        case Axis::X: return v.x;
        case Axis::Y: return v.y;
        case Axis::Z: return v.z;
    }
    throw InvalidParameterError("unknown axis");
}

Vec3 axis_unit(Axis axis) {
    switch (axis) {
        case Axis::X: return {1.0, 0.0, 0.0};
        case Axis::Y: return {0.0, 1.0, 0.0};
        case Axis::Z: return {0.0, 0.0, 1.0};
    }
    throw InvalidParameterError("unknown axis");
}

}  // namespace phaserank
