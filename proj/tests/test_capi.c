/* Exercises the C API from plain C. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "uce/uce_c.h"

static int failures = 0;

#define EXPECT(cond)                                           \
  do {                                                         \
    if (!(cond)) {                                             \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                              \
    }                                                          \
  } while (0)

int main(void) {
  uce_algebra* a = NULL;
  char* out = NULL;
  int pass = -1;

  EXPECT(uce_algebra_parse(NULL, &a) == UCE_ERR_NULL_ARGUMENT);
  EXPECT(uce_algebra_parse("ring Z\nbasis 1\nunit 1\nmul 1 1 = x\n", &a) == UCE_ERR_SYNTAX);
  EXPECT(a == NULL);
  EXPECT(strstr(uce_last_error(), "line 4") != NULL);
  EXPECT(strcmp(uce_status_name(UCE_ERR_SYNTAX), "syntax-error") == 0);
  EXPECT(uce_algebra_builtin("nope", &a) == UCE_ERR_INVALID_ARGUMENT);

  EXPECT(uce_algebra_builtin("Z", &a) == UCE_OK);
  EXPECT(uce_algebra_describe(a, &out) == UCE_OK);
  EXPECT(strstr(out, "\"rank\": 1") != NULL);
  uce_string_free(out);

  EXPECT(uce_h2(a, "Z", 2, 2, "sl", 1, &out, &pass) == UCE_OK);
  EXPECT(pass == 1);
  EXPECT(strstr(out, "\"formula\": \"HC1 + A2^4 + A0^2\"") != NULL);
  uce_string_free(out);

  EXPECT(uce_h2(a, "Z", 2, 2, "gl", 1, &out, &pass) == UCE_ERR_INVALID_ARGUMENT);
  EXPECT(uce_run_checks(a, "Z", "2;1", NULL, 1, 0, &out, &pass) == UCE_ERR_INVALID_ARGUMENT);

  EXPECT(uce_run_checks(a, "Z", "2,1;3,0", "h2-sl,membership", 2, 0, &out, &pass) == UCE_OK);
  EXPECT(pass == 1);
  EXPECT(strstr(out, "\"version\": \"1\"") != NULL);
  uce_string_free(out);

  EXPECT(uce_cocycle_check(a, "2,2", &out, &pass) == UCE_OK);
  EXPECT(pass == 1);
  uce_string_free(out);
  EXPECT(uce_cocycle_check(a, "3,2", &out, &pass) == UCE_ERR_VARIANT_NOT_SUPPORTED);

  EXPECT(uce_algebra_serialize(a, &out) == UCE_OK);
  uce_algebra* b = NULL;
  EXPECT(uce_algebra_parse(out, &b) == UCE_OK);
  uce_string_free(out);
  uce_algebra_free(b);
  uce_algebra_free(a);

  if (failures == 0) printf("C API: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
