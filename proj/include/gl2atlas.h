#ifndef GL2ATLAS_H
#define GL2ATLAS_H

#ifdef __cplusplus
extern "C" {
#endif

const char* gl2atlas_version(void);

#ifdef __cplusplus
}
#endif

#endif /* GL2ATLAS_H */
