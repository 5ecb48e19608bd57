#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qadiag/common.hpp"
#include "qadiag/text.hpp"

namespace qadiag {

struct Entity {
  std::string type;
  std::string text;
  bool is_answer = false;

  bool operator==(const Entity&) const = default;
};

struct Candidate {
  std::string id;  // unique within its question
  std::string doc_id;
  std::string sentence;
  std::optional<bool> gold_correct;
  std::vector<Entity> entities;

  bool operator==(const Candidate&) const = default;
};

struct Question {
  std::string id;  // unique within the corpus
  std::string text;
  std::vector<std::string> answer_keys;  // nonempty; alternatives combine by OR
  std::optional<std::string> answer_type;
  std::vector<Candidate> candidates;

  bool operator==(const Question&) const = default;
};

struct Corpus {
  std::vector<Question> questions;  // input order preserved

  bool operator==(const Corpus&) const = default;
};

// One external system's per-question verdicts.
struct SystemRun {
  std::string system_id;
  std::map<std::string, bool> judgments;  // question id -> answered correctly

  bool operator==(const SystemRun&) const = default;
};

namespace corpus_detail {

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                                     const std::string& file, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError(file, line, std::string("missing required field '") + key + "'");
  return *it;
}

inline Entity parse_entity(const nlohmann::json& j, const std::string& file, std::size_t line) {
  Entity e;
  e.type = require(j, "type", file, line).get<std::string>();
  e.text = require(j, "text", file, line).get<std::string>();
  e.is_answer = require(j, "is_answer", file, line).get<bool>();
  if (e.text.empty()) throw ParseError(file, line, "entity text is empty");
  return e;
}

inline Candidate parse_candidate(const nlohmann::json& j, const std::string& file,
                                 std::size_t line) {
  Candidate c;
  c.id = require(j, "id", file, line).get<std::string>();
  c.doc_id = require(j, "doc_id", file, line).get<std::string>();
  c.sentence = require(j, "sentence", file, line).get<std::string>();
  if (auto it = j.find("gold_correct"); it != j.end() && !it->is_null())
    c.gold_correct = it->get<bool>();
  if (auto it = j.find("entities"); it != j.end() && !it->is_null())
    for (const auto& ent : *it) c.entities.push_back(parse_entity(ent, file, line));
  return c;
}

}  // namespace corpus_detail

inline Corpus load_corpus(std::istream& in, const std::string& name) {
  Corpus corpus;
  std::set<std::string> seen_questions;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(name, lineno, e.what());
    }
    try {
      using corpus_detail::require;
      Question q;
      q.id = require(j, "id", name, lineno).get<std::string>();
      q.text = require(j, "text", name, lineno).get<std::string>();
      for (const auto& key : require(j, "answer_keys", name, lineno))
        q.answer_keys.push_back(key.get<std::string>());
      if (q.answer_keys.empty())
        throw ParseError(name, lineno, "question '" + q.id + "' has empty answer_keys");
      if (auto it = j.find("answer_type"); it != j.end() && !it->is_null())
        q.answer_type = it->get<std::string>();
      std::set<std::string> seen_candidates;
      for (const auto& cand : require(j, "candidates", name, lineno)) {
        Candidate c = corpus_detail::parse_candidate(cand, name, lineno);
        if (!seen_candidates.insert(c.id).second)
          throw ParseError(name, lineno,
                           "duplicate candidate id '" + c.id + "' in question '" + q.id + "'");
        q.candidates.push_back(std::move(c));
      }
      if (!seen_questions.insert(q.id).second)
        throw ParseError(name, lineno, "duplicate question id '" + q.id + "'");
      corpus.questions.push_back(std::move(q));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(name, lineno, e.what());
    }
  }
  if (corpus.questions.empty()) throw ParseError(name, lineno, "no questions");
  return corpus;
}

inline Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path);
  return load_corpus(in, path);
}

// JSON Lines, one question per line, fields in input-schema order.
inline std::string save_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& q : corpus.questions) {
    nlohmann::ordered_json j;
    j["id"] = q.id;
    j["text"] = q.text;
    j["answer_keys"] = q.answer_keys;
    if (q.answer_type) j["answer_type"] = *q.answer_type;
    j["candidates"] = nlohmann::ordered_json::array();
    for (const auto& c : q.candidates) {
      nlohmann::ordered_json jc;
      jc["id"] = c.id;
      jc["doc_id"] = c.doc_id;
      jc["sentence"] = c.sentence;
      if (c.gold_correct) jc["gold_correct"] = *c.gold_correct;
      if (!c.entities.empty()) {
        jc["entities"] = nlohmann::ordered_json::array();
        for (const auto& e : c.entities)
          jc["entities"].push_back({{"type", e.type}, {"text", e.text}, {"is_answer", e.is_answer}});
      }
      j["candidates"].push_back(std::move(jc));
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

// Non-fatal data-quality findings, one string per (question, condition).
inline std::vector<std::string> validate(const Corpus& corpus) {
  std::vector<std::string> warnings;
  for (const auto& q : corpus.questions) {
    bool any_gold_correct = false;
    bool any_entities = false;
    for (const auto& c : q.candidates) {
      if (c.gold_correct && *c.gold_correct) any_gold_correct = true;
      if (!c.entities.empty()) any_entities = true;
    }
    if (q.candidates.empty())
      warnings.push_back("question '" + q.id + "' has no candidates");
    else if (!any_gold_correct)
      warnings.push_back("question '" + q.id + "' has no gold-correct candidate");
    if (any_entities && !q.answer_type)
      warnings.push_back("question '" + q.id + "' has entities but no answer_type");
    if (q.answer_type && !any_entities)
      warnings.push_back("question '" + q.id + "' has answer_type but no entities");
  }
  return warnings;
}

inline std::vector<SystemRun> load_system_runs(std::istream& in, const std::string& name,
                                               const Corpus& corpus) {
  std::set<std::string> known;
  for (const auto& q : corpus.questions) known.insert(q.id);

  std::vector<SystemRun> runs;
  std::map<std::string, std::size_t> index;  // system_id -> position in runs
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(name, lineno, e.what());
    }
    try {
      using corpus_detail::require;
      std::string system_id = require(j, "system_id", name, lineno).get<std::string>();
      std::string question_id = require(j, "question_id", name, lineno).get<std::string>();
      bool correct = require(j, "correct", name, lineno).get<bool>();
      if (!known.count(question_id))
        throw ParseError(name, lineno, "unknown question id '" + question_id + "'");
      auto [it, inserted] = index.try_emplace(system_id, runs.size());
      if (inserted) runs.push_back(SystemRun{system_id, {}});
      auto& judgments = runs[it->second].judgments;
      if (!judgments.emplace(question_id, correct).second)
        throw ParseError(name, lineno, "duplicate judgment for system '" + system_id +
                                           "', question '" + question_id + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(name, lineno, e.what());
    }
  }
  return runs;
}

inline std::vector<SystemRun> load_system_runs(const std::string& path, const Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open system-run file: " + path);
  return load_system_runs(in, path, corpus);
}

}  // namespace qadiag
