"""Walk through lexicon-based sentiment classification.

Shows the three moving parts: tokenization, dictionary matching with prefix
wildcards, and the majority-rule label. Run from the repo root:

    python demos/sentiment_basics.py
"""

from econmine.corpus import load_stoplist, remove_stopwords, tokenize
from econmine.resources import data_path
from econmine.sentiment import SentimentLexicon, classify, default_lexicon

# --- 1. tokenization ---------------------------------------------------------
# URLs and @mentions disappear, hashtags keep their body, punctuation is
# stripped from the edges, and short/numeric tokens are dropped.

raw = "Obama WINS the debate!! http://t.co/x123 #jobs @cnn 2012"
print("raw:   ", raw)
print("tokens:", tokenize(raw))
print()

# --- 2. matching with the bundled demonstration lexicon ----------------------

lexicon = default_lexicon()
stoplist = load_stoplist(data_path("stoplist.txt"))

samples = [
    "Great jobs report tonight, a strong win for the president #jobs",
    "What a disaster of a tax plan, just terrible and wrong",
    "The debate is on tonight, watch it live",
    "I love the plan but fear the debt",  # one word each way -> tie
]
for text in samples:
    tokens = remove_stopwords(tokenize(text), stoplist)
    result = classify(tokens, lexicon)
    print(f"{result.label:>8}  (+{result.pos_count}/-{result.neg_count})  {text}")
print()

# --- 3. wildcards count by occurrence, once per polarity ---------------------
# 'happi*' matches happiness/happier/happily; repeated tokens count each time.

tiny = SentimentLexicon(["happi*", "good"], ["sad"])
for tokens in (["happiness"], ["happier", "happily"], ["good", "good", "sad"]):
    result = classify(tokens, tiny)
    print(f"{tokens} -> (+{result.pos_count}/-{result.neg_count}) {result.label}")
