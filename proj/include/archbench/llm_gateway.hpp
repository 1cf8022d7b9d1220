// Copyright 2026 The archbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ARCHBENCH__LLM_GATEWAY_HPP_
#define ARCHBENCH__LLM_GATEWAY_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "archbench/errors.hpp"
#include "archbench/promptkit.hpp"

namespace archbench
{

/// Request/response wire format a provider endpoint speaks.
enum class ApiStyle
{
  OpenAi,     ///< chat completions (also used by xAI)
  Anthropic,  ///< messages API
  Gemini,     ///< generateContent
};

std::string_view to_string(ApiStyle style);
ApiStyle parse_api_style(std::string_view text);

struct ModelConfig
{
  std::string label;
  std::string organisation;
  std::string model_name;
  bool batch_support = false;
  double input_rate = 0.0;   ///< USD per million input tokens
  double output_rate = 0.0;  ///< USD per million output tokens
  std::string endpoint;
  std::string api_key_env;
  ApiStyle api_style = ApiStyle::OpenAi;
  std::string context;  ///< advertised context size; informational only
  std::size_t max_concurrency = 1;
  /// Sent only to APIs that reject requests without an output cap (Anthropic).
  std::uint64_t required_max_tokens = 4096;
};

/// Parses {"models": [...]}. Throws ConfigError on duplicate labels, negative
/// rates, unknown API styles or labels unusable as directory names.
std::vector<ModelConfig> parse_model_configs(std::string_view json_text);
std::vector<ModelConfig> load_model_configs(const std::filesystem::path & path);

/// (input_tokens * input_rate + output_tokens * output_rate) / 1e6.
double response_cost(
  std::uint64_t input_tokens, std::uint64_t output_tokens, const ModelConfig & model);

enum class ResponseStatus
{
  Ok,
  TransportError,
  ProviderError,
};

std::string_view to_string(ResponseStatus status);
ResponseStatus parse_response_status(std::string_view text);

struct LlmResponse
{
  std::string question_id;
  std::string model_label;
  std::string raw_text;
  std::uint64_t input_tokens = 0;
  std::uint64_t output_tokens = 0;
  std::chrono::milliseconds latency{0};
  double cost = 0.0;
  ResponseStatus status = ResponseStatus::Ok;
};

struct ProviderReply
{
  std::string text;
  std::uint64_t input_tokens = 0;
  std::uint64_t output_tokens = 0;

  bool operator==(const ProviderReply &) const = default;
};

/// Connection failure, rate limit or server error; the request may be retried.
class TransportFailure : public Error
{
public:
  using Error::Error;
};

/// The provider answered with an error status or an unusable body. Never retried.
class ProviderFailure : public Error
{
public:
  ProviderFailure(int http_status, const std::string & message)
  : Error(message), http_status_(http_status) {}

  int http_status() const {return http_status_;}

private:
  int http_status_;
};

/// Sends one prompt and returns the provider's reply. Implementations must be
/// safe to call from several threads at once.
class Provider
{
public:
  virtual ~Provider() = default;
  virtual ProviderReply complete(const PromptRecord & prompt, const ModelConfig & model) = 0;
};

/// Serves recorded replies keyed by (question_id, model_label).
///
/// Fixture lines: {"question_id", "model_label", "raw_text", "input_tokens", "output_tokens"}.
class ReplayProvider final : public Provider
{
public:
  /// Throws ReplayError on malformed lines or a repeated (question_id, model_label).
  static ReplayProvider from_jsonl(std::string_view text);
  static ReplayProvider load(const std::filesystem::path & path);

  /// Throws ReplayError when no fixture matches.
  ProviderReply complete(const PromptRecord & prompt, const ModelConfig & model) override;

  std::size_t size() const {return fixtures_.size();}
  bool contains(std::string_view question_id, std::string_view model_label) const;

private:
  std::map<std::pair<std::string, std::string>, ProviderReply> fixtures_;
};

namespace wire
{

struct HttpRequest
{
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
};

/// Request for `model.api_style`. Carries the model name and the prompt
/// only: no temperature or other sampling parameters.
HttpRequest build_request(
  const ModelConfig & model, const PromptRecord & prompt, std::string_view api_key);

/// Extracts text and token usage. Throws ProviderFailure when the body has no text.
ProviderReply parse_reply(ApiStyle style, std::string_view body);

}  // namespace wire

struct HttpOptions
{
  std::chrono::seconds connect_timeout{10};
  std::chrono::seconds read_timeout{600};
};

class HttpProvider final : public Provider
{
public:
  explicit HttpProvider(std::string api_key, HttpOptions options = {});
  ProviderReply complete(const PromptRecord & prompt, const ModelConfig & model) override;

private:
  std::string api_key_;
  HttpOptions options_;
};

/// HTTP provider for `model`, with the key read from `model.api_key_env`.
/// Throws ConfigError when the variable is unset or empty.
std::unique_ptr<Provider> make_live_provider(const ModelConfig & model, HttpOptions options = {});

struct CampaignOptions
{
  /// Run directory receiving <model>/<question_id>.txt and responses.csv.
  /// Empty disables persistence and resume.
  std::filesystem::path run_dir;
  std::size_t max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  /// Parallel requests; 0 uses the model's max_concurrency.
  std::size_t concurrency = 0;
};

/// Prompts each record exactly once and returns one response per prompt, in
/// prompt order. Prompts that already have an OK response for this model in
/// the run directory's log are not re-sent. Transport failures are retried
/// with exponential backoff and end as TRANSPORT_ERROR; provider errors end
/// as PROVIDER_ERROR immediately. Other exceptions (e.g. ReplayError) propagate.
std::vector<LlmResponse> run_campaign(
  std::span<const PromptRecord> prompts, const ModelConfig & model, Provider & provider,
  const CampaignOptions & options = {});

/// responses.csv columns: question_id, model, status, input_tokens, output_tokens, cost, text.
const std::vector<std::string> & response_csv_header();
std::string format_response_row(const LlmResponse & response);

/// Reads responses.csv; when a (question_id, model) pair repeats, the last row wins.
std::vector<LlmResponse> parse_responses_csv(std::string_view text);
std::vector<LlmResponse> load_responses(const std::filesystem::path & path);

}  // namespace archbench

#endif  // ARCHBENCH__LLM_GATEWAY_HPP_
