#pragma once

#include "chm/ifs.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chm {

/// Catalog entry: a named system plus the reference values its regression
/// tests pin. Proven values are closed forms from the literature; conjectural
/// values record what the minimization stabilizes at.
struct GalleryEntry {
    std::string name;
    SystemPtr system;
    std::optional<double> expected_s;
    std::optional<double> expected_csm;
    enum class Status { proven, conjectural } csm_status = Status::conjectural;
    /// (generation, expected minimum) rows, consecutive from generation 0.
    std::vector<std::pair<int, double>> expected_table;
    std::string note;
    /// Set when entry parameters fall outside the range where the closed form
    /// is established; the run itself is still meaningful.
    std::optional<std::string> admissibility_warning;
};

/// Construct a catalog entry by name. Parametrized names take numeric or
/// fractional arguments, e.g. "sierpinski(0.2)", "cantor-lambda(1/4)",
/// "sym-cantor(1/8,1/5)". Unknown names raise an error listing the catalog.
GalleryEntry gallery_get(const std::string& name);

/// Stable catalog identifiers (parametrized families shown with placeholders).
std::vector<std::string> gallery_names();

} // namespace chm
