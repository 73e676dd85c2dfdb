#include "qrepsim/resources.hpp"

namespace qrepsim {

std::string stage_name(Stage s) {
    switch (s) {
        case Stage::Raw: return "raw";
        case Stage::Purified: return "purified";
        case Stage::Swapped: return "swapped";
        case Stage::LogicalLink: return "logical-link";
        case Stage::LogicalSwapped: return "logical-swapped";
    }
    return "?";
}

} // namespace qrepsim
