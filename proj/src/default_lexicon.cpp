// Copyright 2026 The scenecheck Authors
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

#include "scenecheck/corpus.hpp"

namespace scenecheck {

// Kept byte-identical with data/default_lexicon.json (a unit test enforces
// the sync) so CLI users can start from the shipped file.
std::string_view default_lexicon_json() {
  static constexpr std::string_view kJson = R"json({
  "object_synonyms": {
    "armchair": "chair", "armchairs": "chair",
    "backpack": "backpack", "backpacks": "backpack",
    "bag": "bag", "bags": "bag",
    "bed": "bed", "beds": "bed",
    "book": "book", "books": "book",
    "book shelf": "bookshelf", "book shelves": "bookshelf",
    "bookshelf": "bookshelf", "bookshelves": "bookshelf",
    "bottle": "bottle", "bottles": "bottle",
    "box": "box", "boxes": "box",
    "cabinet": "cabinet", "cabinets": "cabinet",
    "ceiling": "ceiling", "ceilings": "ceiling",
    "chair": "chair", "chairs": "chair",
    "coffee table": "coffee_table", "coffee tables": "coffee_table",
    "computer": "computer", "computers": "computer",
    "couch": "sofa", "couches": "sofa",
    "counter": "counter", "counters": "counter",
    "cup": "cup", "cups": "cup",
    "curtain": "curtain", "curtains": "curtain",
    "desk": "desk", "desks": "desk",
    "door": "door", "doors": "door",
    "dresser": "dresser", "dressers": "dresser",
    "floor": "floor", "floors": "floor",
    "fridge": "refrigerator", "fridges": "refrigerator",
    "garbage can": "trash_can", "garbage cans": "trash_can",
    "keyboard": "keyboard", "keyboards": "keyboard",
    "lamp": "lamp", "lamps": "lamp",
    "microwave": "microwave", "microwaves": "microwave",
    "mirror": "mirror", "mirrors": "mirror",
    "monitor": "monitor", "monitors": "monitor",
    "night stand": "nightstand", "nightstand": "nightstand",
    "nightstands": "nightstand",
    "picture": "picture", "pictures": "picture",
    "pillow": "pillow", "pillows": "pillow",
    "plant": "plant", "plants": "plant",
    "refrigerator": "refrigerator", "refrigerators": "refrigerator",
    "shelf": "shelf", "shelves": "shelf",
    "sink": "sink", "sinks": "sink",
    "sofa": "sofa", "sofas": "sofa",
    "stove": "stove", "stoves": "stove",
    "table": "table", "tables": "table",
    "television": "tv", "televisions": "tv",
    "toilet": "toilet", "toilets": "toilet",
    "towel": "towel", "towels": "towel",
    "trash can": "trash_can", "trash cans": "trash_can",
    "tv": "tv", "tvs": "tv",
    "wall": "wall", "walls": "wall",
    "whiteboard": "whiteboard", "whiteboards": "whiteboard",
    "window": "window", "windows": "window"
  },
  "attribute_vocab": {
    "color": ["black", "white", "red", "green", "blue", "brown", "gray",
              "grey", "yellow", "orange", "purple", "pink", "beige", "tan",
              "silver", "gold"],
    "shape": ["round", "square", "rectangular", "circular", "oval", "curved",
              "flat", "triangular", "l-shaped"],
    "size": ["big", "small", "large", "tiny", "huge", "tall", "short", "wide",
             "narrow", "long", "little"]
  },
  "relation_antonyms": {
    "left": "right", "right": "left",
    "above": "below", "below": "above",
    "on": "under", "under": "on",
    "in front of": "behind", "behind": "in front of",
    "inside": "outside", "outside": "inside",
    "near": "far", "far": "near",
    "on top of": "beneath", "beneath": "on top of",
    "on the left": "on the right", "on the right": "on the left",
    "to the left of": "to the right of", "to the right of": "to the left of"
  },
  "stopwords": ["the", "a", "an", "is", "are", "was", "were", "be", "been",
                "being", "there", "this", "that", "these", "those", "it",
                "its", "and", "or", "of", "to", "in", "at", "with", "has",
                "have", "had", "what", "which", "where", "who", "how", "why",
                "i", "you", "we", "they", "can", "could", "would", "should",
                "do", "does", "located", "situated", "placed", "positioned",
                "sitting", "standing", "lying", "resting", "found", "kept",
                "put", "room", "scene"]
}
)json";
  return kJson;
}

const Lexicon& Lexicon::bundled_default() {
  static const Lexicon lex = Lexicon::from_json_text(std::string(default_lexicon_json()));
  return lex;
}

}  // namespace scenecheck
