#pragma once

// Minimal prototypes for the BLAS/LAPACK routines in use; linked from
// OpenBLAS, which bundles both.

extern "C" {

void dgemm_(const char* transa, const char* transb, const int* m, const int* n,
            const int* k, const double* alpha, const double* a, const int* lda,
            const double* b, const int* ldb, const double* beta, double* c,
            const int* ldc);

void sgemm_(const char* transa, const char* transb, const int* m, const int* n,
            const int* k, const float* alpha, const float* a, const int* lda,
            const float* b, const int* ldb, const float* beta, float* c,
            const int* ldc);

void dsyevd_(const char* jobz, const char* uplo, const int* n, double* a,
             const int* lda, double* w, double* work, const int* lwork,
             int* iwork, const int* liwork, int* info);

void dstev_(const char* jobz, const int* n, double* d, double* e, double* z,
            const int* ldz, double* work, int* info);
}
