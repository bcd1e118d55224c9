// Parser for the project's PlantUML component-diagram dialect (see docs/schemas.md).
// Extracts architectural facts into canonical element multisets; layout and line
// order never influence the result.
#pragma once

#include <filesystem>
#include <string>

#include "archrec/diagnostics.hpp"
#include "archrec/evaluation.hpp"

namespace archrec::eval
{

// Parses one diagram text. Unrecognized lines become diagnostics, never silent
// drops. Throws AnalysisError (with line number) on unbalanced block structure
// or a missing @startuml/@enduml frame.
ElementSets parse_plantuml_model(const std::string& text, DiagnosticSink& sink);

// Parses a .puml file, or every *.puml under a directory (sorted), merging sets.
ElementSets parse_model_path(const std::filesystem::path& path, DiagnosticSink& sink);

}  // namespace archrec::eval
