#include <stdio.h>
#include <string.h>
#include "hierarch.h"

#define CHECK(cond)                                                     \
  do {                                                                  \
    if (!(cond)) {                                                      \
      const char *e = hierarch_last_error();                            \
      fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond, e ? e : ""); \
      return 1;                                                         \
    }                                                                   \
  } while (0)

int main(void) {
  HierarchLanguage *even = NULL, *odd = NULL, *f3 = NULL;
  bool b = false;
  size_t n = 0;

  CHECK(hierarch_language_from_regex("(aa)*", "a", &even) == HIERARCH_STATUS_OK);
  CHECK(hierarch_language_from_regex("a(aa)*", "a", &odd) == HIERARCH_STATUS_OK);
  CHECK(hierarch_language_accepts(even, "aaaa", &b) == HIERARCH_STATUS_OK && b);
  CHECK(hierarch_syntactic_size(even, &n) == HIERARCH_STATUS_OK && n == 2);

  CHECK(hierarch_separate(even, odd, "at", &b) == HIERARCH_STATUS_OK && !b);
  CHECK(hierarch_separate(even, odd, "mod", &b) == HIERARCH_STATUS_UNSUPPORTED);

  HierarchLanguage *some_a = NULL, *only_b = NULL;
  CHECK(hierarch_language_from_regex("A*aA*", "ab", &some_a) == HIERARCH_STATUS_OK);
  CHECK(hierarch_language_from_regex("b*", "ab", &only_b) == HIERARCH_STATUS_OK);
  CHECK(hierarch_separate(some_a, only_b, "at", &b) == HIERARCH_STATUS_OK && b);
  const HierarchLanguage *others[] = {only_b};
  CHECK(hierarch_cover(some_a, others, 1, "at", &b) == HIERARCH_STATUS_OK && b);
  hierarch_language_free(some_a);
  hierarch_language_free(only_b);

  CHECK(hierarch_language_fixture("F3", &f3) == HIERARCH_STATUS_OK);
  CHECK(hierarch_member(f3, "fo2s:st", &b) == HIERARCH_STATUS_OK && b);
  CHECK(hierarch_member(f3, "fo2:st", &b) == HIERARCH_STATUS_OK && !b);

  char *json = NULL;
  CHECK(hierarch_member_json(f3, "fo2:st", &json) == HIERARCH_STATUS_OK);
  CHECK(strstr(json, "\"member\":false") != NULL);
  hierarch_string_free(json);

  CHECK(hierarch_member(f3, "upol:gr", &b) == HIERARCH_STATUS_UNSUPPORTED);
  CHECK(hierarch_last_error() != NULL);
  CHECK(hierarch_language_from_regex("(a", "a", &odd) == HIERARCH_STATUS_PARSE);

  HierarchEnv *env = NULL;
  CHECK(hierarch_env_new("ab", &env) == HIERARCH_STATUS_OK);
  CHECK(hierarch_env_insert_regex(env, "All", "A*") == HIERARCH_STATUS_OK);
  CHECK(hierarch_tl_eval(env, "F[All] a", "bba", 0, &b) == HIERARCH_STATUS_OK && b);
  hierarch_env_free(env);

  hierarch_language_free(even);
  hierarch_language_free(odd);
  hierarch_language_free(f3);
  printf("ok %s\n", hierarch_version());
  return 0;
}
