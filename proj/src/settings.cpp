#include "olo/settings.hpp"

namespace olo {

NumericSettings& numeric_settings()
{
    static NumericSettings settings;
    return settings;
}

} // namespace olo
