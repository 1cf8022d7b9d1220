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

#include "archbench/llm_gateway.hpp"

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "archbench/csv.hpp"
#include "archbench/io.hpp"

namespace archbench
{

namespace
{

using nlohmann::json;

using Clock = std::chrono::steady_clock;

bool valid_label(std::string_view label)
{
  if (label.empty() || label == "." || label == "..") {
    return false;
  }
  return std::all_of(
    label.begin(), label.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    });
}

template<typename T>
T get_field(const json & j, const char * key, const std::string & where)
{
  auto it = j.find(key);
  if (it == j.end()) {
    throw ConfigError(fmt::format("{}: missing field '{}'", where, key));
  }
  try {
    return it->get<T>();
  } catch (const json::exception &) {
    throw ConfigError(fmt::format("{}: field '{}' has the wrong type", where, key));
  }
}

template<typename T>
T get_field_or(const json & j, const char * key, T fallback, const std::string & where)
{
  return j.contains(key) ? get_field<T>(j, key, where) : fallback;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what)
{
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(fmt::format("invalid {} '{}'", what, text));
  }
  return value;
}

double parse_double(std::string_view text, std::string_view what)
{
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(fmt::format("invalid {} '{}'", what, text));
  }
  return value;
}

std::pair<std::string, std::string> split_url(const std::string & url)
{
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError(fmt::format("endpoint '{}' is not an absolute URL", url));
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    return {url, "/"};
  }
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::uint64_t token_count(const json & obj, const char * key)
{
  auto it = obj.find(key);
  return (it != obj.end() && it->is_number_unsigned()) ? it->get<std::uint64_t>() : 0;
}

/// Serializes appends to responses.csv and the per-response text files.
class ResponseLog
{
public:
  explicit ResponseLog(std::filesystem::path run_dir)
  : run_dir_(std::move(run_dir)), csv_path_(run_dir_ / "responses.csv")
  {
    std::filesystem::create_directories(run_dir_);
    const bool fresh = !std::filesystem::exists(csv_path_) ||
      std::filesystem::file_size(csv_path_) == 0;
    out_.open(csv_path_, std::ios::binary | std::ios::app);
    if (!out_) {
      throw Error(fmt::format("cannot append to '{}'", csv_path_.string()));
    }
    if (fresh) {
      out_ << csv::format_row(response_csv_header());
      out_.flush();
    }
  }

  void append(const LlmResponse & response)
  {
    const std::string row = format_response_row(response);
    std::lock_guard<std::mutex> lock(mutex_);
    write_text_file(
      run_dir_ / response.model_label / (response.question_id + ".txt"), response.raw_text);
    out_ << row;
    out_.flush();
  }

private:
  std::filesystem::path run_dir_;
  std::filesystem::path csv_path_;
  std::ofstream out_;
  std::mutex mutex_;
};

LlmResponse prompt_once(
  const PromptRecord & prompt, const ModelConfig & model, Provider & provider,
  const CampaignOptions & options)
{
  LlmResponse response;
  response.question_id = prompt.question_id;
  response.model_label = model.label;
  const auto start = Clock::now();
  auto backoff = options.initial_backoff;
  for (std::size_t attempt = 0;; ++attempt) {
    try {
      ProviderReply reply = provider.complete(prompt, model);
      response.status = ResponseStatus::Ok;
      response.raw_text = std::move(reply.text);
      response.input_tokens = reply.input_tokens;
      response.output_tokens = reply.output_tokens;
      response.cost = response_cost(reply.input_tokens, reply.output_tokens, model);
      break;
    } catch (const TransportFailure &) {
      if (attempt >= options.max_retries) {
        response.status = ResponseStatus::TransportError;
        response.raw_text.clear();
        break;
      }
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    } catch (const ProviderFailure & e) {
      response.status = ResponseStatus::ProviderError;
      response.raw_text = e.what();
      break;
    }
  }
  response.latency = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return response;
}

}  // namespace

std::string_view to_string(ApiStyle style)
{
  switch (style) {
    case ApiStyle::OpenAi: return "openai";
    case ApiStyle::Anthropic: return "anthropic";
    case ApiStyle::Gemini: return "gemini";
  }
  return "unknown";
}

ApiStyle parse_api_style(std::string_view text)
{
  for (auto style : {ApiStyle::OpenAi, ApiStyle::Anthropic, ApiStyle::Gemini}) {
    if (to_string(style) == text) {
      return style;
    }
  }
  throw ConfigError(fmt::format("unknown api_style '{}'", text));
}

std::vector<ModelConfig> parse_model_configs(std::string_view json_text)
{
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error & e) {
    throw ConfigError(fmt::format("model config: {}", e.what()));
  }
  if (!doc.is_object() || !doc.contains("models") || !doc["models"].is_array()) {
    throw ConfigError("model config must be an object with a 'models' array");
  }
  std::vector<ModelConfig> out;
  std::set<std::string> labels;
  for (const json & entry : doc["models"]) {
    if (!entry.is_object()) {
      throw ConfigError("model config: entries must be objects");
    }
    ModelConfig m;
    m.label = get_field<std::string>(entry, "label", "model");
    const std::string where = fmt::format("model '{}'", m.label);
    if (!valid_label(m.label)) {
      throw ConfigError(
              fmt::format("{}: labels may only use letters, digits, '-', '_' and '.'", where));
    }
    if (!labels.insert(m.label).second) {
      throw ConfigError(fmt::format("duplicate model label '{}'", m.label));
    }
    m.organisation = get_field_or<std::string>(entry, "organisation", "", where);
    m.model_name = get_field<std::string>(entry, "model_name", where);
    m.batch_support = get_field_or<bool>(entry, "batch_support", false, where);
    m.input_rate = get_field<double>(entry, "input_rate", where);
    m.output_rate = get_field<double>(entry, "output_rate", where);
    if (!(m.input_rate >= 0.0) || !(m.output_rate >= 0.0) ||
      !std::isfinite(m.input_rate) || !std::isfinite(m.output_rate))
    {
      throw ConfigError(fmt::format("{}: rates must be finite and non-negative", where));
    }
    m.endpoint = get_field_or<std::string>(entry, "endpoint", "", where);
    m.api_key_env = get_field_or<std::string>(entry, "api_key_env", "", where);
    m.api_style = parse_api_style(get_field_or<std::string>(entry, "api_style", "openai", where));
    m.context = get_field_or<std::string>(entry, "context", "", where);
    m.max_concurrency = get_field_or<std::size_t>(entry, "max_concurrency", 1, where);
    if (m.max_concurrency == 0) {
      throw ConfigError(fmt::format("{}: max_concurrency must be at least 1", where));
    }
    m.required_max_tokens =
      get_field_or<std::uint64_t>(entry, "required_max_tokens", m.required_max_tokens, where);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<ModelConfig> load_model_configs(const std::filesystem::path & path)
{
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error & e) {
    throw ConfigError(e.what());
  }
  return parse_model_configs(text);
}

double response_cost(
  std::uint64_t input_tokens, std::uint64_t output_tokens, const ModelConfig & model)
{
  return (static_cast<double>(input_tokens) * model.input_rate +
         static_cast<double>(output_tokens) * model.output_rate) / 1e6;
}

std::string_view to_string(ResponseStatus status)
{
  switch (status) {
    case ResponseStatus::Ok: return "OK";
    case ResponseStatus::TransportError: return "TRANSPORT_ERROR";
    case ResponseStatus::ProviderError: return "PROVIDER_ERROR";
  }
  return "UNKNOWN";
}

ResponseStatus parse_response_status(std::string_view text)
{
  for (auto s : {ResponseStatus::Ok, ResponseStatus::TransportError,
      ResponseStatus::ProviderError})
  {
    if (to_string(s) == text) {
      return s;
    }
  }
  throw Error(fmt::format("unknown response status '{}'", text));
}

ReplayProvider ReplayProvider::from_jsonl(std::string_view text)
{
  ReplayProvider provider;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      const json j = json::parse(line);
      auto key = std::make_pair(
        j.at("question_id").get<std::string>(), j.at("model_label").get<std::string>());
      ProviderReply reply{
        j.at("raw_text").get<std::string>(),
        j.value("input_tokens", std::uint64_t{0}),
        j.value("output_tokens", std::uint64_t{0})};
      if (!provider.fixtures_.emplace(key, std::move(reply)).second) {
        throw ReplayError(
                fmt::format(
                  "replay fixture line {}: duplicate entry for question '{}' model '{}'",
                  line_no, key.first, key.second));
      }
    } catch (const json::exception & e) {
      throw ReplayError(fmt::format("replay fixture line {}: {}", line_no, e.what()));
    }
  }
  return provider;
}

ReplayProvider ReplayProvider::load(const std::filesystem::path & path)
{
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error & e) {
    throw ReplayError(e.what());
  }
  return from_jsonl(text);
}

bool ReplayProvider::contains(std::string_view question_id, std::string_view model_label) const
{
  return fixtures_.contains({std::string(question_id), std::string(model_label)});
}

ProviderReply ReplayProvider::complete(const PromptRecord & prompt, const ModelConfig & model)
{
  auto it = fixtures_.find({prompt.question_id, model.label});
  if (it == fixtures_.end()) {
    throw ReplayError(
            fmt::format(
              "no replay fixture for question '{}' model '{}'", prompt.question_id, model.label));
  }
  return it->second;
}

namespace wire
{

HttpRequest build_request(
  const ModelConfig & model, const PromptRecord & prompt, std::string_view api_key)
{
  HttpRequest request;
  request.url = model.endpoint;
  json body;
  switch (model.api_style) {
    case ApiStyle::OpenAi:
      request.headers = {{"Authorization", fmt::format("Bearer {}", api_key)}};
      body["model"] = model.model_name;
      body["messages"] = json::array(
        {
          {{"role", "system"}, {"content", prompt.system_prompt}},
          {{"role", "user"}, {"content", prompt.user_content}},
        });
      break;
    case ApiStyle::Anthropic:
      request.headers = {
        {"x-api-key", std::string(api_key)},
        {"anthropic-version", "2023-06-01"}};
      body["model"] = model.model_name;
      body["system"] = prompt.system_prompt;
      body["messages"] = json::array({{{"role", "user"}, {"content", prompt.user_content}}});
      body["max_tokens"] = model.required_max_tokens;
      break;
    case ApiStyle::Gemini:
      request.headers = {{"x-goog-api-key", std::string(api_key)}};
      body["system_instruction"] = {{"parts", json::array({{{"text", prompt.system_prompt}}})}};
      body["contents"] = json::array(
        {{{"role", "user"}, {"parts", json::array({{{"text", prompt.user_content}}})}}});
      break;
  }
  request.body = body.dump();
  return request;
}

ProviderReply parse_reply(ApiStyle style, std::string_view body)
{
  json doc;
  try {
    doc = json::parse(body.begin(), body.end());
  } catch (const json::parse_error & e) {
    throw ProviderFailure(200, fmt::format("unparseable provider body: {}", e.what()));
  }
  ProviderReply reply;
  bool has_text = false;
  try {
    switch (style) {
      case ApiStyle::OpenAi: {
          const json & message = doc.at("choices").at(0).at("message");
          if (message.contains("content") && message["content"].is_string()) {
            reply.text = message["content"].get<std::string>();
            has_text = true;
          }
          const json usage = doc.value("usage", json::object());
          reply.input_tokens = token_count(usage, "prompt_tokens");
          reply.output_tokens = token_count(usage, "completion_tokens");
          break;
        }
      case ApiStyle::Anthropic: {
          for (const json & block : doc.at("content")) {
            if (block.value("type", "") == "text") {
              reply.text += block.at("text").get<std::string>();
              has_text = true;
            }
          }
          const json usage = doc.value("usage", json::object());
          reply.input_tokens = token_count(usage, "input_tokens");
          reply.output_tokens = token_count(usage, "output_tokens");
          break;
        }
      case ApiStyle::Gemini: {
          const json & parts = doc.at("candidates").at(0).at("content").at("parts");
          for (const json & part : parts) {
            if (part.contains("text") && !part.value("thought", false)) {
              reply.text += part["text"].get<std::string>();
              has_text = true;
            }
          }
          const json usage = doc.value("usageMetadata", json::object());
          reply.input_tokens = token_count(usage, "promptTokenCount");
          // Thinking tokens are billed as output.
          reply.output_tokens = token_count(usage, "candidatesTokenCount") +
            token_count(usage, "thoughtsTokenCount");
          break;
        }
    }
  } catch (const json::exception & e) {
    throw ProviderFailure(200, fmt::format("unexpected provider body: {}", e.what()));
  }
  if (!has_text) {
    throw ProviderFailure(200, "provider reply contains no text");
  }
  return reply;
}

}  // namespace wire

HttpProvider::HttpProvider(std::string api_key, HttpOptions options)
: api_key_(std::move(api_key)), options_(options) {}

ProviderReply HttpProvider::complete(const PromptRecord & prompt, const ModelConfig & model)
{
  const wire::HttpRequest request = wire::build_request(model, prompt, api_key_);
  const auto [base, path] = split_url(request.url);

  httplib::Client client(base);
  client.set_connection_timeout(options_.connect_timeout);
  client.set_read_timeout(options_.read_timeout);
  httplib::Headers headers;
  for (const auto & [name, value] : request.headers) {
    headers.emplace(name, value);
  }
  auto result = client.Post(path, headers, request.body, "application/json");
  if (!result) {
    throw TransportFailure(
            fmt::format("{}: {}", request.url, httplib::to_string(result.error())));
  }
  if (result->status == 429 || result->status >= 500) {
    throw TransportFailure(fmt::format("HTTP {}: {}", result->status, result->body));
  }
  if (result->status < 200 || result->status >= 300) {
    throw ProviderFailure(
            result->status, fmt::format("HTTP {}: {}", result->status, result->body));
  }
  return wire::parse_reply(model.api_style, result->body);
}

std::unique_ptr<Provider> make_live_provider(const ModelConfig & model, HttpOptions options)
{
  if (model.api_key_env.empty()) {
    throw ConfigError(fmt::format("model '{}' has no api_key_env", model.label));
  }
  if (model.endpoint.empty()) {
    throw ConfigError(fmt::format("model '{}' has no endpoint", model.label));
  }
  const char * key = std::getenv(model.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw ConfigError(
            fmt::format(
              "environment variable {} is not set (API key for model '{}')",
              model.api_key_env, model.label));
  }
  split_url(model.endpoint);
  return std::make_unique<HttpProvider>(key, options);
}

std::vector<LlmResponse> run_campaign(
  std::span<const PromptRecord> prompts, const ModelConfig & model, Provider & provider,
  const CampaignOptions & options)
{
  std::vector<std::optional<LlmResponse>> slots(prompts.size());
  std::unique_ptr<ResponseLog> log;
  if (!options.run_dir.empty()) {
    const auto csv_path = options.run_dir / "responses.csv";
    if (std::filesystem::exists(csv_path)) {
      std::map<std::string, LlmResponse> done;
      for (auto & r : load_responses(csv_path)) {
        if (r.model_label == model.label && r.status == ResponseStatus::Ok) {
          done.emplace(r.question_id, std::move(r));
        }
      }
      for (std::size_t i = 0; i < prompts.size(); ++i) {
        auto it = done.find(prompts[i].question_id);
        if (it != done.end()) {
          slots[i] = it->second;
        }
      }
    }
    log = std::make_unique<ResponseLog>(options.run_dir);
  }

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    if (!slots[i]) {
      pending.push_back(i);
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&]() {
      for (;;) {
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (first_error) {
            return;
          }
        }
        const std::size_t k = next.fetch_add(1);
        if (k >= pending.size()) {
          return;
        }
        const std::size_t i = pending[k];
        try {
          LlmResponse response = prompt_once(prompts[i], model, provider, options);
          if (log) {
            log->append(response);
          }
          slots[i] = std::move(response);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
          return;
        }
      }
    };

  const std::size_t limit = options.concurrency == 0 ? model.max_concurrency : options.concurrency;
  const std::size_t workers = std::min(std::max<std::size_t>(limit, 1), pending.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back(worker);
    }
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }

  std::vector<LlmResponse> out;
  out.reserve(slots.size());
  for (auto & slot : slots) {
    out.push_back(std::move(*slot));
  }
  return out;
}

const std::vector<std::string> & response_csv_header()
{
  static const std::vector<std::string> header = {
    "question_id", "model", "status", "input_tokens", "output_tokens", "cost", "text"};
  return header;
}

std::string format_response_row(const LlmResponse & r)
{
  const std::vector<std::string> fields = {
    r.question_id,
    r.model_label,
    std::string(to_string(r.status)),
    std::to_string(r.input_tokens),
    std::to_string(r.output_tokens),
    fmt::format("{}", r.cost),
    r.raw_text,
  };
  return csv::format_row(fields);
}

std::vector<LlmResponse> parse_responses_csv(std::string_view text)
{
  std::vector<LlmResponse> out;
  std::map<std::pair<std::string, std::string>, std::size_t> position;
  for (const auto & row : csv::parse_with_header(text, response_csv_header())) {
    LlmResponse r;
    r.question_id = row[0];
    r.model_label = row[1];
    r.status = parse_response_status(row[2]);
    r.input_tokens = parse_u64(row[3], "input_tokens");
    r.output_tokens = parse_u64(row[4], "output_tokens");
    r.cost = parse_double(row[5], "cost");
    r.raw_text = row[6];
    auto key = std::make_pair(r.question_id, r.model_label);
    auto it = position.find(key);
    if (it == position.end()) {
      position.emplace(std::move(key), out.size());
      out.push_back(std::move(r));
    } else {
      out[it->second] = std::move(r);
    }
  }
  return out;
}

std::vector<LlmResponse> load_responses(const std::filesystem::path & path)
{
  return parse_responses_csv(read_text_file(path));
}

}  // namespace archbench
