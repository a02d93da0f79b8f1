#pragma once

#include <string>

#include "wnd/audit.hpp"
#include "wnd/lp_refine.hpp"
#include "wnd/mip_bnb.hpp"
#include "wnd/model.hpp"

namespace wnd {

// JSON documents. Exact numbers are strings ("2.02e-10", "7/3"); parsing
// throws FormatError on malformed input and DomainError on invalid content.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

std::string solution_to_json(const Instance& inst, const Solution& sol);
Solution solution_from_json(const Instance& inst, const std::string& text);

std::string report_to_json(const Instance& inst, const AuditReport& report);
std::string verification_to_json(const Instance& inst, const Assignment& asg,
                                 const VerificationResult& result);
std::string refine_to_json(const RefineResult& result);

// Free-format MPS with doubles (%.17g). Lossy: exact rationals are rounded.
std::string to_mps(const LinearProgram& lp, const std::string& name = "WND");
std::string to_mps(const MipProblem& mip, const std::string& name = "WND");

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

extern const char* const kToolVersion;

}  // namespace wnd
