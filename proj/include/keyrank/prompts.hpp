#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace keyrank {

// Paired encoder/decoder text templates. The encoder side carries exactly
// one {document} slot, the decoder side exactly one {candidate} slot.
struct PromptTemplate {
  std::string id;
  std::string encoder_template;
  std::string decoder_template;
};

struct RenderedPrompt {
  std::string encoder_text;
  std::string decoder_text;
  // byte span of the candidate surface inside decoder_text
  std::size_t candidate_begin = 0;
  std::size_t candidate_end = 0;
};

// The 15 built-in templates (p1, p1_1..p1_3, p2, p2_1..p2_6, p3,
// p3_1..p3_3). Stable across calls.
const std::vector<PromptTemplate>& builtin_catalog();

// nullptr when the id is not a built-in.
const PromptTemplate* find_builtin(std::string_view id);

// Throws Error(Data) naming the template id when a slot is missing,
// duplicated, or the wrong slot appears on a side.
void validate_template(const PromptTemplate& t);

// Catalog file: JSON array of {"id", "encoder", "decoder"} objects.
std::vector<PromptTemplate> load_catalog(const std::string& json_text);
std::vector<PromptTemplate> load_catalog_file(const std::string& path);

// Verbatim slot substitution, no escaping or normalization.
RenderedPrompt render(const PromptTemplate& t, std::string_view document_text,
                      std::string_view candidate_surface);

}  // namespace keyrank
