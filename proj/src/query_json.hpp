#pragma once

#include "egg/query.hpp"
#include "json_util.hpp"

namespace egg::detail {

ordered_json payload_to_json(const AnswerPayload& p);
AnswerPayload payload_from_json(Modality m, const json& j, const std::string& path);

}  // namespace egg::detail
