#pragma once

#include <string>
#include <vector>

#include "qdmr/opident.hpp"

// One example decomposition per operator, with the steps that use it.
struct OperatorRow {
  qdmr::Operator op;
  std::string qdmr;
  std::vector<int> steps;
};

inline const std::vector<OperatorRow>& operator_rows() {
  using qdmr::Operator;
  static const std::vector<OperatorRow> rows = {
      {Operator::Select, "return touchdowns ;return the number of #1", {1}},
      {Operator::Filter, "return flights ;return #1 from Toronto ;return #2 to San Diego", {2, 3}},
      {Operator::Project, "return the Los Angeles Lakers ;return the head coach of #1", {2}},
      {Operator::Aggregate, "return Colorado ;return border states of #1 ;return the number of #2", {3}},
      {Operator::Group, "return clubs ;return female students of #1 ;return the number of #2 for each #1", {3}},
      {Operator::Superlative,
       "return papers ;return keywords of #1 ;return the number of #1 for each #2 ;return #2 where #3 is highest",
       {4}},
      {Operator::Comparative,
       "return authors ;return papers of #1 ;return the number of #2 for each of #1 ;"
       "return #1 where #3 is more than 500",
       {4}},
      {Operator::Union, "return the president ;return the vice-president ;return #1 , #2", {3}},
      {Operator::Intersection,
       "return representatives ;return #1 in New York state ;return #1 in Pennsylvania state ;"
       "return parties in both #2 and #3",
       {4}},
      {Operator::Discard, "return professors ;return #1 playing Canoeing ;return #1 besides #2", {3}},
      {Operator::Sort,
       "return students ;return addresses of #1 ;return monthly rental of #2 ;return #2 sorted by #3", {4}},
      // steps 1-2 of the last two rows are filled in by hand
      {Operator::Boolean,
       "return Scott Derrickson ;return Ed Wood ;return the nationality of #1 ;return the nationality of #2 ;"
       "return if #3 is the same as #4",
       {5}},
      {Operator::Arithmetic,
       "return red objects ;return blue objects ;return the number of #1 ;return the number of #2 ;"
       "return the difference of #3 and #4",
       {5}},
  };
  return rows;
}

// "keywords contained by more than 100 ACL papers", decomposed like the
// comparative row.
inline const char* kKeywordsQdmr =
    "return keywords ;return ACL papers of #1 ;return the number of #2 for each #1 ;"
    "return #1 where #3 is more than 100";
