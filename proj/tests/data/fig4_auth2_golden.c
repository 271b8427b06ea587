#include <stdio.h>
#include <stdlib.h>

static int authorized = 0;

static void perform_auth_1(const char *creds) {
    if (creds[0] != '\0') {
        authorized = 1;
    }
}

static void perform_auth_2(const char *creds) {
    if (creds[0] == 'k') {
        authorized = 1;
    }
}

static void abort_unauthorized(void) {
    printf("trap\n");
    exit(2);
}

static void protected_function(void) {
    printf("protected\n");
}

int main(int argc, char **argv) {
    const char *creds = "key";
    int auth_type = argc > 1 ? atoi(argv[1]) : 1;
    switch (auth_type) {
        case 1:
            perform_auth_1(creds);
            break;
        default:
            abort_unauthorized();
            break;
    }
    if (!authorized) {
        abort_unauthorized();
    }
    protected_function();
    return 0;
}
