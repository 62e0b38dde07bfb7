/* Synthesizes the 19-bit worked example through the C API and verifies it. */
#include <stdio.h>
#include <string.h>

#include "kstage.h"

#define CHECK(call)                                                          \
  do {                                                                       \
    KsStatus st_ = (call);                                                   \
    if (st_ != KS_STATUS_OK) {                                               \
      fprintf(stderr, "%s failed: %d %s\n", #call, (int)st_,                 \
              ks_last_error_message());                                      \
      return 1;                                                              \
    }                                                                        \
  } while (0)

int main(void) {
  KsSequence *seq = NULL;
  KsMachine *machine = NULL;
  uint32_t k = 0;
  uint32_t support[32];
  size_t len = 0;
  bool ok = false;
  char *doc = NULL;

  CHECK(ks_sequence_parse("0011011100101110110", &seq));
  CHECK(ks_min_stages(seq, &k));
  CHECK(ks_synthesize(seq, KS_POLICY_ZERO_SINK, &machine));
  CHECK(ks_machine_support(machine, 4, support, 32, &len));
  CHECK(ks_machine_verify(machine, NULL, &ok));
  CHECK(ks_machine_to_document(machine, false, &doc));

  printf("k=%u stages=%u f4=%zu:%u,%u,%u verified=%d\n", k,
         ks_machine_stages(machine), len, support[0], support[1], support[2],
         (int)ok);
  int has_sequence = strstr(doc, "\"sequence\": \"0011011100101110110\"") != NULL;

  KsSequence *constant = NULL;
  KsStatus st = ks_sequence_parse("111", &constant);
  KsMachine *none = NULL;
  if (st == KS_STATUS_OK) st = ks_synthesize(constant, KS_POLICY_ZERO_SINK, &none);
  printf("constant=%d\n", (int)st);

  ks_string_free(doc);
  ks_machine_free(machine);
  ks_sequence_free(seq);
  ks_sequence_free(constant);
  return (ok && has_sequence && k == 5) ? 0 : 1;
}
