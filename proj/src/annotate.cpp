#include "acd/annotate.hpp"

#include <sstream>

#include "httplib.h"

namespace acd {

ParsedSentence FixtureAnnotator::annotate(const std::string& sentence) const {
  if (sentence.empty())
    throw ValidationError("annotate: sentence must be non-empty");
  auto found = store_.find(sentence);
  if (!found) throw MissingParseError(normalize_sentence(sentence));
  return *found;
}

ServiceAnnotator::ServiceAnnotator(std::string endpoint, LabelScheme scheme)
    : scheme_(scheme) {
  // Accepts http://host:port/path
  std::string rest = endpoint;
  const std::string http = "http://";
  if (rest.rfind(http, 0) == 0) rest = rest.substr(http.size());
  size_t slash = rest.find('/');
  path_ = slash == std::string::npos ? "/" : rest.substr(slash);
  std::string hostport = rest.substr(0, slash);
  size_t colon = hostport.find(':');
  if (colon == std::string::npos) {
    host_ = hostport;
  } else {
    host_ = hostport.substr(0, colon);
    port_ = std::stoi(hostport.substr(colon + 1));
  }
  if (host_.empty()) throw ConfigError("malformed parser endpoint: " + endpoint);
}

ParsedSentence ServiceAnnotator::annotate(const std::string& sentence) const {
  if (sentence.empty())
    throw ValidationError("annotate: sentence must be non-empty");
  httplib::Client client(host_, port_);
  auto res = client.Post(path_, sentence, "text/plain");
  if (!res)
    throw TransportError("parser service unreachable at " + host_ + ":" +
                         std::to_string(port_));
  if (res->status != 200)
    throw ProtocolError("parser service returned status " +
                        std::to_string(res->status));
  FixtureStore store;
  std::istringstream body(res->body);
  try {
    store.load_stream(body, "service response", scheme_);
  } catch (const ParseError& e) {
    throw ProtocolError(std::string("malformed parser service response: ") +
                        e.what());
  }
  if (store.size() != 1)
    throw ProtocolError("parser service returned " + std::to_string(store.size()) +
                        " blocks, expected 1");
  auto found = store.find(sentence);
  if (!found)
    throw ProtocolError("parser service response does not match the request sentence");
  return *found;
}

namespace {

bool is_noun(const Token& t) { return t.pos.rfind("NN", 0) == 0; }

}  // namespace

MergeResult merge_entity_terms(const ParsedSentence& s, const Annotator& source) {
  std::vector<Token> merged;
  bool changed = false;
  size_t i = 0;
  while (i < s.tokens.size()) {
    if (is_noun(s.tokens[i])) {
      size_t j = i;
      while (j + 1 < s.tokens.size() && is_noun(s.tokens[j + 1])) ++j;
      if (j > i) {
        Token t;
        t.surface.clear();
        for (size_t k = i; k <= j; ++k) t.surface += s.tokens[k].surface;
        t.pos = s.tokens[i].pos;
        merged.push_back(t);
        changed = true;
        i = j + 1;
        continue;
      }
    }
    merged.push_back(s.tokens[i]);
    ++i;
  }

  MergeResult out;
  if (!changed) {
    out.sentence = s;
  } else {
    std::string text = reconstruct_text(merged);
    out.sentence = source.annotate(text);
    out.sentence.origin_section = s.origin_section;
    out.sentence.origin_step = s.origin_step;
  }
  out.changed = changed;
  for (const auto& t : out.sentence.tokens)
    if (is_noun(t)) out.terms.push_back(t.surface);
  return out;
}

}  // namespace acd
